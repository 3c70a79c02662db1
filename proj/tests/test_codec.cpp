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

#include <string>
#include <vector>

#include "bpe.hpp"
#include "codec.hpp"
#include "corpus.hpp"
#include "error.hpp"
#include "reference_oracles.hpp"

using subseg::CharSegmenter;
using subseg::Corpus;
using subseg::Error;
using subseg::ErrorCode;
using subseg::SegmentedText;
using subseg::Sentence;

namespace {

SegmentedText units_of(std::initializer_list<const char*> units) {
  SegmentedText text;
  for (const char* u : units) text.units.emplace_back(u);
  return text;
}

}  // namespace

TEST_CASE("desegment splices subwords between markers back into words") {
  SegmentedText text = units_of({"Chi", "ldhoo", "d", "_", "mea", "ns", "_",
                                 "si", "mpli", "ci", "ty", "_", "."});
  Sentence restored = subseg::desegment(text);
  CHECK(restored.joined() == "Childhood means simplicity .");
}

TEST_CASE("segment inserts the marker between words only") {
  Sentence s;
  s.tokens = {"ab", "cd"};
  SegmentedText text = subseg::segment(s, CharSegmenter());
  CHECK(text.joined() == "a b _ c d");
  CHECK(subseg::is_canonical(text));
}

TEST_CASE("one word needs no marker at all") {
  Sentence s;
  s.tokens = {"abc"};
  CHECK(subseg::segment(s, CharSegmenter()).joined() == "a b c");
}

TEST_CASE("an empty sentence segments to no units") {
  Sentence s;
  SegmentedText text = subseg::segment(s, CharSegmenter());
  CHECK(text.units.empty());
  CHECK(subseg::desegment(text).tokens.empty());
}

TEST_CASE("desegment tolerates stray markers") {
  CHECK(subseg::desegment(units_of({"_", "a", "b", "_"})).joined() == "ab");
  CHECK(subseg::desegment(units_of({"a", "_", "_", "b"})).joined() == "a b");
  CHECK(subseg::desegment(units_of({"_", "_"})).tokens.empty());
}

TEST_CASE("is_canonical rejects what segment never produces") {
  CHECK(subseg::is_canonical(units_of({"a", "_", "b"})));
  CHECK_FALSE(subseg::is_canonical(units_of({"_", "a"})));
  CHECK_FALSE(subseg::is_canonical(units_of({"a", "_"})));
  CHECK_FALSE(subseg::is_canonical(units_of({"a", "_", "_", "b"})));
  CHECK_FALSE(subseg::is_canonical(units_of({"a", "", "b"})));
  CHECK(subseg::is_canonical(SegmentedText{}));
}

TEST_CASE("a custom marker changes both directions") {
  Sentence s;
  s.tokens = {"xy", "z"};
  SegmentedText text = subseg::segment(s, CharSegmenter(), "@@");
  CHECK(text.joined() == "x y @@ z");
  CHECK(subseg::desegment(text, "@@").joined() == "xy z");
  // Under the default marker nothing is a boundary: one word comes back.
  CHECK(subseg::desegment(text).joined() == "xy@@z");
}

TEST_CASE("segment_corpus and desegment_corpus are line-aligned inverses") {
  Corpus c = Corpus::from_text("the cat sat\n\nsat the\n");
  Corpus seg = subseg::segment_corpus(c, CharSegmenter());
  REQUIRE(seg.line_count() == c.line_count());
  CHECK(seg.sentences()[0].joined() == "t h e _ c a t _ s a t");
  CHECK(seg.sentences()[1].tokens.empty());
  Corpus back = subseg::desegment_corpus(seg);
  CHECK(back.to_text() == c.to_text());
}

TEST_CASE("round trip holds for char and bpe schemes on random corpora") {
  oracle::Rng rng(21);
  std::vector<std::string> lexicon;
  for (size_t i = 0; i < 30; ++i) lexicon.push_back(rng.word("abcdef", 1, 7));
  auto lines = rng.sentences(lexicon, 200, 0, 9);
  Corpus c = Corpus::from_text(oracle::join_lines(lines));

  Corpus char_seg = subseg::segment_corpus(c, CharSegmenter());
  CHECK(subseg::desegment_corpus(char_seg).to_text() == c.to_text());

  subseg::BpeModel model = subseg::learn_bpe(c, 25);
  subseg::BpeSegmenter bpe(model);
  Corpus bpe_seg = subseg::segment_corpus(c, bpe);
  CHECK(subseg::desegment_corpus(bpe_seg).to_text() == c.to_text());
}

TEST_CASE("segmented corpus loads back under a disabled marker check") {
  Corpus c = Corpus::from_text("ab cd\n");
  Corpus seg = subseg::segment_corpus(c, CharSegmenter());
  Corpus reloaded =
      Corpus::from_text(seg.to_text(), subseg::Normalization::kNone, "");
  CHECK(reloaded.to_text() == seg.to_text());
}

namespace {

// Segmenters that violate the contract, for invariant checks.
struct EmptyUnitSegmenter : subseg::WordSegmenter {
  std::vector<std::string> segment_word(const std::string&) const override {
    return {""};
  }
};

struct WrongConcatSegmenter : subseg::WordSegmenter {
  std::vector<std::string> segment_word(const std::string&) const override {
    return {"oops"};
  }
};

struct ThrowingSegmenter : subseg::WordSegmenter {
  std::vector<std::string> segment_word(
      const std::string& word) const override {
    throw Error(ErrorCode::kInvalidArgument, "cannot segment '" + word + "'");
  }
};

}  // namespace

TEST_CASE("broken segmenter output is flagged as an internal error") {
  Sentence s;
  s.tokens = {"ok", "word"};
  try {
    subseg::segment(s, EmptyUnitSegmenter());
    FAIL("expected an internal error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInternal);
  }
  try {
    subseg::segment(s, WrongConcatSegmenter());
    FAIL("expected an internal error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInternal);
  }
}

TEST_CASE("segmenter errors carry the index of the failing word") {
  Sentence s;
  s.tokens = {"first", "second"};
  try {
    subseg::segment(s, ThrowingSegmenter());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
    CHECK(std::string(e.what()).find("word 0") != std::string::npos);
    CHECK(std::string(e.what()).find("first") != std::string::npos);
  }
}

TEST_CASE("a unit equal to the marker cannot come from a segmenter") {
  // A segmenter returning the marker itself would make desegment merge
  // words; segment must reject it as malformed output.
  struct MarkerSegmenter : subseg::WordSegmenter {
    std::vector<std::string> segment_word(
        const std::string& word) const override {
      if (word == "x") return {"_"};
      return {word};
    }
  };
  Sentence s;
  s.tokens = {"x"};
  CHECK_THROWS_AS(subseg::segment(s, MarkerSegmenter()), const Error&);
}
