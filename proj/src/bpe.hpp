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

#ifndef SUBSEG_SRC_BPE_HPP_
#define SUBSEG_SRC_BPE_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.hpp"
#include "translit.hpp"

namespace subseg {

// One merge rule; its rank is its index in BpeModel::merges.
struct MergeRule {
  std::string left;
  std::string right;

  std::string product() const { return left + right; }
  friend bool operator==(const MergeRule&, const MergeRule&) = default;
};

struct BpeModel {
  std::set<std::string> alphabet;   // distinct characters of the training text
  std::vector<MergeRule> merges;    // rank order

  friend bool operator==(const BpeModel&, const BpeModel&) = default;
};

// Word frequency table with deterministic iteration order.
using WordFreqTable = std::map<std::string, uint64_t>;

WordFreqTable word_frequencies(const Corpus& corpus);

// Learns up to num_merges merge rules from the corpus by repeatedly merging
// the most frequent adjacent subword pair. Pair frequencies are weighted by
// word frequency and count every adjacent index pair, including overlapping
// occurrences of self-pairs. Ties break toward the lexicographically
// smallest (left, right) pair, compared bytewise. Learning stops early once
// the best pair occurs fewer than two times; the returned model then has
// fewer than num_merges rules. Throws Error(kInvalidArgument) on a corpus
// with no tokens.
BpeModel learn_bpe(const Corpus& corpus, size_t num_merges);
BpeModel learn_bpe(const WordFreqTable& words, size_t num_merges);

struct MatchResult {
  BpeModel model;
  size_t target_vocab = 0;
  size_t achieved_vocab = 0;        // distinct subwords after learning
  bool target_below_alphabet = false;
  bool exhausted = false;           // ran out of mergeable pairs short of target
};

// Learns merges until the number of distinct subwords in the segmented
// training corpus first reaches or exceeds target_vocab. A target below the
// alphabet size yields a zero-merge model with target_below_alphabet set.
MatchResult match_merges(const Corpus& corpus, size_t target_vocab);
MatchResult match_merges(const WordFreqTable& words, size_t target_vocab);

// Learns one model from the concatenation of both corpora. When a mapping
// is given, the target side is transliterated into the source script first.
// Without a mapping, the corpora must share characters: if the character
// vocabulary overlap |A∩B| / min(|A|,|B|) is below overlap_threshold the
// pairing is refused with Error(kUnsupported).
BpeModel learn_joint(const Corpus& source, const Corpus& target,
                     size_t num_merges,
                     const TransliterationTable* mapping = nullptr,
                     double overlap_threshold = kDefaultOverlapThreshold);

// Segments one word. Rules are applied in rank order; each pass applies
// every applicable rule exhaustively (left to right, non-overlapping) and
// passes repeat until no rule fires. Characters outside the alphabet stay
// as singleton subwords. Subwords always concatenate back to the word.
std::vector<std::string> apply_bpe(const BpeModel& model,
                                   std::string_view word);

// Model file layout: a header line "subseg-bpe <version> <num_merges>
// <alphabet_size>", the alphabet one character per line in byte order, then
// one "left<TAB>right" line per merge in rank order.
void save_model(const BpeModel& model, const std::string& path);
std::string serialize_model(const BpeModel& model);

// Rejects unknown versions, malformed lines, duplicate pairs, and rules
// whose sides are not composable from the alphabet and earlier products.
// Errors carry 1-based line numbers.
BpeModel load_model(const std::string& path);
BpeModel parse_model(std::string_view text, const std::string& source_name);

}  // namespace subseg

#endif  // SUBSEG_SRC_BPE_HPP_
