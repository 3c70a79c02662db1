// Copyright 2026 The Subseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "error.hpp"
#include "eval.hpp"
#include "reference_oracles.hpp"

using subseg::bleu;
using subseg::Corpus;
using subseg::Error;
using subseg::ErrorCode;
using subseg::EvalReport;
using subseg::Metric;
using subseg::soft_bleu;

TEST_CASE("identical corpora score exactly one") {
  Corpus c = Corpus::from_text("a b c d\nx y z\n");
  for (EvalReport report : {bleu(c, c), soft_bleu(c, c)}) {
    CHECK(report.score == 1.0);
    CHECK(report.brevity_penalty == 1.0);
    for (double p : report.precisions) CHECK(p == 1.0);
    CHECK(report.hyp_length == 7);
    CHECK(report.ref_length == 7);
  }
}

TEST_CASE("brevity penalty golden for a one-word-short hypothesis") {
  Corpus hyp = Corpus::from_text("a b c d\n");
  Corpus ref = Corpus::from_text("a b c d e\n");
  EvalReport report = bleu(hyp, ref);
  // All orders match perfectly; only exp(1 - 5/4) remains.
  for (double p : report.precisions) CHECK(p == 1.0);
  CHECK(report.brevity_penalty ==
        doctest::Approx(std::exp(-0.25)).epsilon(1e-9));
  CHECK(report.score == doctest::Approx(std::exp(-0.25)).epsilon(1e-9));
  CHECK(report.hyp_length == 4);
  CHECK(report.ref_length == 5);
}

TEST_CASE("no penalty when the hypothesis is at least as long") {
  Corpus hyp = Corpus::from_text("a b c\n");
  Corpus ref = Corpus::from_text("a b\n");
  CHECK(bleu(hyp, ref, 1).brevity_penalty == 1.0);
  CHECK(bleu(ref, ref, 1).brevity_penalty == 1.0);
}

TEST_CASE("repeated hypothesis words are clipped to reference counts") {
  Corpus hyp = Corpus::from_text("the the the\n");
  Corpus ref = Corpus::from_text("the cat\n");
  EvalReport unigram = bleu(hyp, ref, 1);
  CHECK(unigram.precisions[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(unigram.score == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // The bigram order has no matches, which zeroes the whole score.
  EvalReport bigram = bleu(hyp, ref, 2);
  CHECK(bigram.precisions[1] == 0.0);
  CHECK(bigram.score == 0.0);
}

TEST_CASE("an order with no candidate n-grams zeroes the score") {
  Corpus hyp = Corpus::from_text("a\n");
  Corpus ref = Corpus::from_text("a\n");
  EvalReport report = bleu(hyp, ref, 2);
  CHECK(report.precisions[0] == 1.0);
  CHECK(report.precisions[1] == 0.0);
  CHECK(report.score == 0.0);
}

TEST_CASE("counts pool over the corpus instead of averaging sentences") {
  Corpus hyp = Corpus::from_text("a b\nc d\n");
  Corpus ref = Corpus::from_text("a b\nc x\n");
  EvalReport report = bleu(hyp, ref, 2);
  CHECK(report.precisions[0] == doctest::Approx(3.0 / 4.0));
  CHECK(report.precisions[1] == doctest::Approx(1.0 / 2.0));
  CHECK(report.score == doctest::Approx(std::sqrt(0.375)).epsilon(1e-12));
}

TEST_CASE("an empty hypothesis line contributes nothing") {
  Corpus hyp = Corpus::from_text("\n");
  Corpus ref = Corpus::from_text("a b\n");
  EvalReport report = bleu(hyp, ref, 1);
  CHECK(report.score == 0.0);
  CHECK(report.brevity_penalty == 1.0);
  CHECK(report.hyp_length == 0);
  CHECK(report.ref_length == 2);
}

TEST_CASE("evaluation input validation") {
  Corpus two = Corpus::from_text("a\nb\n");
  Corpus three = Corpus::from_text("a\nb\nc\n");
  try {
    bleu(two, three);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kAlignment);
  }
  Corpus empty = Corpus::from_text("");
  try {
    bleu(empty, empty);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
  try {
    bleu(two, two, 0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
  CHECK_THROWS_AS(soft_bleu(two, three), const Error&);
}

TEST_CASE("soft matching caps credit at the pooled reference capacity") {
  Corpus hyp = Corpus::from_text("x x\n");
  Corpus ref = Corpus::from_text("x\n");
  EvalReport report = soft_bleu(hyp, ref, 1);
  // The first occurrence takes the whole capacity; the second gets nothing.
  CHECK(report.precisions[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.score == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("soft matching grants partial credit for near misses") {
  Corpus hyp = Corpus::from_text("abcd\n");
  Corpus ref = Corpus::from_text("abcx\n");
  CHECK(bleu(hyp, ref, 1).score == 0.0);
  EvalReport report = soft_bleu(hyp, ref, 1);
  // One substitution over four characters.
  CHECK(report.score == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("similarity below the threshold earns nothing") {
  Corpus hyp = Corpus::from_text("abcd\n");
  Corpus ref = Corpus::from_text("abcx\n");
  CHECK(soft_bleu(hyp, ref, 1, 0.8).score == 0.0);
  // The threshold is inclusive.
  CHECK(soft_bleu(hyp, ref, 1, 0.75).score ==
        doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("exhausted exact matches do not fall back below the threshold") {
  Corpus hyp = Corpus::from_text("ab ax\n");
  Corpus ref = Corpus::from_text("ab\n");
  // "ab" drains the capacity; "ax" finds its only candidate empty.
  EvalReport report = soft_bleu(hyp, ref, 1);
  CHECK(report.precisions[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("hypothesis n-grams match greedily in sentence order") {
  Corpus hyp = Corpus::from_text("cxx axx\n");
  Corpus ref = Corpus::from_text("axx cx\n");
  // "cxx" ties both reference types at 2/3 and takes the earlier one
  // ("axx"), draining 2/3 of it; "axx" then recovers only the residual 1/3
  // through its exact match. Pairing "cxx" with "cx" instead would have
  // scored 2/3 + 1 = 5/3.
  EvalReport report = soft_bleu(hyp, ref, 1);
  CHECK(report.precisions[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("soft similarity spans the space-joined words of an n-gram") {
  Corpus hyp = Corpus::from_text("ab cd\n");
  Corpus ref = Corpus::from_text("ab cx\n");
  EvalReport report = soft_bleu(hyp, ref, 2);
  // Unigrams: "ab" exact, "cd" vs "cx" at 1/2. Bigram: one substitution
  // across "ab cd" vs "ab cx", five characters.
  CHECK(report.precisions[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(report.precisions[1] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(report.score == doctest::Approx(std::sqrt(0.6)).epsilon(1e-12));
}

TEST_CASE("the soft score never falls below the plain score") {
  oracle::Rng rng(9001);
  const std::string alphabet = "abcd";
  std::vector<std::string> lexicon;
  for (int i = 0; i < 24; ++i) lexicon.push_back(rng.word(alphabet, 1, 4));
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::string> refs = rng.sentences(lexicon, 8, 3, 8);
    std::vector<std::string> hyps;
    for (const std::string& line : refs) {
      std::vector<std::string> tokens;
      std::string token;
      for (char ch : line) {
        if (ch == ' ') {
          tokens.push_back(token);
          token.clear();
        } else {
          token += ch;
        }
      }
      tokens.push_back(token);
      // Perturb: sometimes substitute a token, sometimes drop one.
      std::string out;
      for (size_t i = 0; i < tokens.size(); ++i) {
        uint64_t roll = rng.next(10);
        if (roll < 2 && tokens.size() > 1) continue;
        std::string word =
            roll < 5 ? lexicon[rng.next(lexicon.size())] : tokens[i];
        if (!out.empty()) out += ' ';
        out += word;
      }
      hyps.push_back(out);
    }
    Corpus ref_corpus = Corpus::from_text(oracle::join_lines(refs));
    Corpus hyp_corpus = Corpus::from_text(oracle::join_lines(hyps));
    double hard = bleu(hyp_corpus, ref_corpus).score;
    double soft = soft_bleu(hyp_corpus, ref_corpus).score;
    CAPTURE(trial);
    CHECK(soft >= hard - 1e-12);
  }
}

TEST_CASE("edit distance goldens") {
  CHECK(subseg::edit_distance("", "") == 0);
  CHECK(subseg::edit_distance("", "abc") == 3);
  CHECK(subseg::edit_distance("kitten", "sitting") == 3);
  CHECK(subseg::edit_distance("andhapana", "aandhaLepaNaa") == 5);
  // Scalars, not bytes.
  CHECK(subseg::edit_distance("\xe0\xa4\x95\xe0\xa4\x96",
                              "\xe0\xa4\x95\xe0\xa4\x97") == 1);
}

TEST_CASE("edit distance matches the full-matrix oracle") {
  oracle::Rng rng(777);
  const std::string alphabet = "abcde";
  for (int i = 0; i < 300; ++i) {
    std::string a = rng.word(alphabet, 0, 12);
    std::string b = rng.word(alphabet, 0, 12);
    CAPTURE(a);
    CAPTURE(b);
    CHECK(subseg::edit_distance(a, b) == oracle::levenshtein_matrix(a, b));
  }
}

namespace {

// Deterministic fixture: references plus a token-rotated weaker system.
struct BootstrapFixture {
  Corpus refs;
  Corpus perfect;
  Corpus rotated;
};

BootstrapFixture make_bootstrap_fixture() {
  oracle::Rng rng(31337);
  const std::string alphabet = "abcdef";
  std::vector<std::string> lexicon;
  for (int i = 0; i < 20; ++i) lexicon.push_back(rng.word(alphabet, 2, 5));
  std::vector<std::string> lines = rng.sentences(lexicon, 40, 4, 9);
  std::vector<std::string> rotated;
  for (const std::string& line : lines) {
    size_t space = line.find(' ');
    rotated.push_back(line.substr(space + 1) + " " + line.substr(0, space));
  }
  BootstrapFixture fx;
  fx.refs = Corpus::from_text(oracle::join_lines(lines));
  fx.perfect = fx.refs;
  fx.rotated = Corpus::from_text(oracle::join_lines(rotated));
  return fx;
}

}  // namespace

TEST_CASE("bootstrap separates a perfect system from a rotated one") {
  BootstrapFixture fx = make_bootstrap_fixture();
  subseg::SignificanceResult result = subseg::bootstrap_test(
      fx.perfect, fx.rotated, fx.refs, Metric::kBleu, 200, 42);
  CHECK(result.score_a == 1.0);
  CHECK(result.score_b < 1.0);
  CHECK(result.score_a == bleu(fx.perfect, fx.refs).score);
  CHECK(result.score_b == doctest::Approx(bleu(fx.rotated, fx.refs).score));
  CHECK(result.full_delta > 0.0);
  CHECK(result.num_samples == 200);
  CHECK(result.p_value < 0.05);
  CHECK(result.p_value ==
        static_cast<double>(result.opposing) / 200.0);
}

TEST_CASE("the same seed reproduces the bootstrap bit for bit") {
  BootstrapFixture fx = make_bootstrap_fixture();
  auto run = [&] {
    return subseg::bootstrap_test(fx.rotated, fx.perfect, fx.refs,
                                  Metric::kSoftBleu, 150, 1234);
  };
  subseg::SignificanceResult a = run();
  subseg::SignificanceResult b = run();
  CHECK(a.p_value == b.p_value);
  CHECK(a.mean_delta == b.mean_delta);
  CHECK(a.full_delta == b.full_delta);
  CHECK(a.opposing == b.opposing);
  subseg::SignificanceResult c = subseg::bootstrap_test(
      fx.rotated, fx.perfect, fx.refs, Metric::kSoftBleu, 150, 99);
  CHECK(c.mean_delta != a.mean_delta);
}

TEST_CASE("identical systems fix the p-value at one") {
  BootstrapFixture fx = make_bootstrap_fixture();
  subseg::SignificanceResult result = subseg::bootstrap_test(
      fx.rotated, fx.rotated, fx.refs, Metric::kBleu, 100, 7);
  CHECK(result.full_delta == 0.0);
  CHECK(result.mean_delta == 0.0);
  CHECK(result.opposing == 0);
  CHECK(result.p_value == 1.0);
}

TEST_CASE("bootstrap rejects too few samples") {
  BootstrapFixture fx = make_bootstrap_fixture();
  try {
    subseg::bootstrap_test(fx.perfect, fx.rotated, fx.refs, Metric::kBleu, 99,
                           1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
  CHECK_NOTHROW(subseg::bootstrap_test(fx.perfect, fx.rotated, fx.refs,
                                       Metric::kBleu, 100, 1));
}
