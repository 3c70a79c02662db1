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

#include "simil.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"
#include "utf8.hpp"

namespace subseg {

size_t lcs_length(std::u32string_view a, std::u32string_view b) {
  if (a.empty() || b.empty()) return 0;
  if (b.size() > a.size()) std::swap(a, b);  // b indexes the rows
  std::vector<size_t> prev(b.size() + 1, 0);
  std::vector<size_t> curr(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      if (a[i - 1] == b[j - 1]) {
        curr[j] = prev[j - 1] + 1;
      } else {
        curr[j] = std::max(prev[j], curr[j - 1]);
      }
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

size_t lcs_length(std::string_view a, std::string_view b) {
  std::vector<char32_t> ua = utf8::decode(a);
  std::vector<char32_t> ub = utf8::decode(b);
  return lcs_length(std::u32string_view(ua.data(), ua.size()),
                    std::u32string_view(ub.data(), ub.size()));
}

double lcsr(std::string_view a, std::string_view b) {
  std::vector<char32_t> ua = utf8::decode(a);
  std::vector<char32_t> ub = utf8::decode(b);
  size_t longest = std::max(ua.size(), ub.size());
  if (longest == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "lcsr of two empty strings is undefined");
  }
  size_t lcs = lcs_length(std::u32string_view(ua.data(), ua.size()),
                          std::u32string_view(ub.data(), ub.size()));
  return static_cast<double>(lcs) / static_cast<double>(longest);
}

namespace {

std::vector<char32_t> sentence_chars(const Sentence& sentence) {
  return utf8::decode(sentence.joined());
}

// LCSR over already-decoded scalar sequences, with the long-sentence
// truncation guard applied to both sides.
double lcsr_guarded(std::vector<char32_t> a, std::vector<char32_t> b,
                    size_t* truncated) {
  if (a.size() > kLcsMaxChars) {
    a.resize(kLcsMaxChars);
    if (truncated) ++*truncated;
  }
  if (b.size() > kLcsMaxChars) {
    b.resize(kLcsMaxChars);
    if (truncated) ++*truncated;
  }
  size_t longest = std::max(a.size(), b.size());
  size_t lcs = lcs_length(std::u32string_view(a.data(), a.size()),
                          std::u32string_view(b.data(), b.size()));
  return static_cast<double>(lcs) / static_cast<double>(longest);
}

}  // namespace

SimilarityReport corpus_lcsr(const ParallelCorpus& corpus,
                             const TransliterationTable* mapping) {
  corpus.check_aligned();
  SimilarityReport report;
  double sum = 0.0;
  for (size_t i = 0; i < corpus.source.line_count(); ++i) {
    const Sentence& src = corpus.source.sentences()[i];
    Sentence tgt = corpus.target.sentences()[i];
    if (mapping) {
      for (std::string& token : tgt.tokens) {
        token = transliterate(token, *mapping);
      }
    }
    std::vector<char32_t> a = sentence_chars(src);
    std::vector<char32_t> b = sentence_chars(tgt);
    if (a.empty() && b.empty()) {
      ++report.skipped;
      continue;
    }
    double value = lcsr_guarded(std::move(a), std::move(b), &report.truncated);
    report.per_sentence.push_back(value);
    report.sentence_indices.push_back(i);
    sum += value;
    ++report.compared;
  }
  if (report.compared > 0) {
    report.corpus_mean = sum / static_cast<double>(report.compared);
  }
  return report;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "correlation inputs differ in length: " +
                    std::to_string(xs.size()) + " vs " +
                    std::to_string(ys.size()));
  }
  const size_t n = xs.size();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "correlation needs at least two points, got " +
                    std::to_string(n));
  }
  double mx = 0.0;
  double my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double dx = xs[i] - mx;
    double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kDegenerate,
                "correlation undefined: one side has zero variance");
  }
  return sxy / std::sqrt(sxx * syy);
}

CorrelationReport correlate_similarity_accuracy(const Corpus& source,
                                                const Corpus& reference,
                                                const Corpus& hypothesis) {
  if (source.line_count() != reference.line_count() ||
      hypothesis.line_count() != reference.line_count()) {
    throw Error(ErrorCode::kAlignment,
                "line counts differ: " + std::to_string(source.line_count()) +
                    " source, " + std::to_string(reference.line_count()) +
                    " reference, " + std::to_string(hypothesis.line_count()) +
                    " hypothesis");
  }
  CorrelationReport report;
  for (size_t i = 0; i < reference.line_count(); ++i) {
    std::vector<char32_t> src = sentence_chars(source.sentences()[i]);
    std::vector<char32_t> ref = sentence_chars(reference.sentences()[i]);
    std::vector<char32_t> hyp = sentence_chars(hypothesis.sentences()[i]);
    if ((src.empty() && ref.empty()) || (hyp.empty() && ref.empty())) {
      continue;
    }
    report.similarity.push_back(lcsr_guarded(std::move(src), ref, nullptr));
    report.accuracy.push_back(
        lcsr_guarded(std::move(hyp), std::move(ref), nullptr));
  }
  report.points = report.similarity.size();
  report.r = pearson(report.similarity, report.accuracy);
  return report;
}

}  // namespace subseg
