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

#ifndef SUBSEG_SRC_SIMIL_HPP_
#define SUBSEG_SRC_SIMIL_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "corpus.hpp"
#include "translit.hpp"

namespace subseg {

// Sentences longer than this many characters are truncated before the
// quadratic LCS pass; SimilarityReport::truncated counts how often.
inline constexpr size_t kLcsMaxChars = 10000;

// Longest common subsequence length over Unicode scalar values.
size_t lcs_length(std::u32string_view a, std::u32string_view b);
size_t lcs_length(std::string_view a, std::string_view b);

// lcs / max(|a|, |b|), in characters. Throws Error(kInvalidArgument) when
// both strings are empty.
double lcsr(std::string_view a, std::string_view b);

struct SimilarityReport {
  // One entry per sentence pair where at least one side is non-empty;
  // sentence_indices holds their 0-based line numbers.
  std::vector<double> per_sentence;
  std::vector<size_t> sentence_indices;
  double corpus_mean = 0.0;  // meaningful only when compared > 0
  size_t compared = 0;
  size_t skipped = 0;        // both sides empty
  size_t truncated = 0;

  bool has_mean() const { return compared > 0; }
};

// Sentence-level LCSR between the sides of a parallel corpus. Characters
// are the scalars of the tokens joined by single spaces. When a mapping is
// given the target side is transliterated first.
SimilarityReport corpus_lcsr(const ParallelCorpus& corpus,
                             const TransliterationTable* mapping = nullptr);

// Sample Pearson correlation. Throws Error(kInvalidArgument) on length
// mismatch or fewer than two points, Error(kDegenerate) when either side
// has zero variance.
double pearson(std::span<const double> xs, std::span<const double> ys);

struct CorrelationReport {
  double r = 0.0;
  size_t points = 0;
  std::vector<double> similarity;  // LCSR(source, reference) per sentence
  std::vector<double> accuracy;    // LCSR(hypothesis, reference) per sentence
};

// Correlates cross-lingual similarity with translation accuracy, both
// measured against the reference side. Sentences where either pairing is
// empty-vs-empty are skipped.
CorrelationReport correlate_similarity_accuracy(const Corpus& source,
                                                const Corpus& reference,
                                                const Corpus& hypothesis);

}  // namespace subseg

#endif  // SUBSEG_SRC_SIMIL_HPP_
