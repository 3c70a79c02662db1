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

#ifndef SUBSEG_SRC_EVAL_HPP_
#define SUBSEG_SRC_EVAL_HPP_

#include <cstdint>
#include <vector>

#include "corpus.hpp"

namespace subseg {

inline constexpr int kDefaultMaxN = 4;
inline constexpr double kDefaultSoftThreshold = 0.4;
inline constexpr uint64_t kMinBootstrapSamples = 100;

struct EvalReport {
  double score = 0.0;
  std::vector<double> precisions;  // index n-1 holds the n-gram precision
  double brevity_penalty = 1.0;
  uint64_t hyp_length = 0;
  uint64_t ref_length = 0;
};

// Corpus-level BLEU: geometric mean of clipped modified n-gram precisions
// for n = 1..max_n times the brevity penalty exp(1 - ref/hyp) (1.0 when the
// hypothesis is at least as long as the reference). No smoothing: a zero
// precision at any order zeroes the score, and an order with no candidate
// n-grams counts as zero precision. Throws Error(kAlignment) on mismatched
// line counts, Error(kInvalidArgument) on an empty corpus or max_n < 1.
EvalReport bleu(const Corpus& hypotheses, const Corpus& references,
                int max_n = kDefaultMaxN);

// BLEU with partial credit: each hypothesis n-gram, in sentence order, is
// matched to the reference n-gram of highest similarity with remaining
// capacity (exact matches first, then best similarity, then earliest first
// occurrence in the reference). Similarity between n-grams is
// 1 - edit_distance/max_length over the characters of the space-joined
// words, counted only when it reaches the threshold. Matched credit is
// min(similarity, remaining capacity) and consumes that much capacity, so
// each reference occurrence contributes at most once. Identical corpora
// score exactly 1.0, and the soft score never falls below plain BLEU.
EvalReport soft_bleu(const Corpus& hypotheses, const Corpus& references,
                     int max_n = kDefaultMaxN,
                     double threshold = kDefaultSoftThreshold);

enum class Metric { kBleu, kSoftBleu };

struct SignificanceResult {
  double p_value = 1.0;
  double score_a = 0.0;       // full-corpus scores
  double score_b = 0.0;
  double full_delta = 0.0;    // score_a - score_b
  double mean_delta = 0.0;    // mean over resamples
  uint64_t num_samples = 0;
  uint64_t opposing = 0;      // resamples whose delta sign opposes full_delta
};

// Paired bootstrap resampling over sentences. p_value is the fraction of
// resamples whose score difference has the opposite sign of the full-corpus
// difference; a zero full-corpus difference fixes p_value at 1.0. The same
// seed always reproduces the same result bit for bit: every resample draws
// its indices from a private generator derived from (seed, resample index),
// independent of platform. Throws Error(kInvalidArgument) when num_samples
// is below kMinBootstrapSamples.
SignificanceResult bootstrap_test(const Corpus& system_a,
                                  const Corpus& system_b,
                                  const Corpus& references, Metric metric,
                                  uint64_t num_samples, uint64_t seed,
                                  int max_n = kDefaultMaxN,
                                  double threshold = kDefaultSoftThreshold);

// Character-level edit distance (insert, delete, substitute) over Unicode
// scalars; shared with the soft matcher and exposed for direct use.
size_t edit_distance(std::u32string_view a, std::u32string_view b);
size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace subseg

#endif  // SUBSEG_SRC_EVAL_HPP_
