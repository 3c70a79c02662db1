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

#ifndef SUBSEG_CORPUS_HPP
#define SUBSEG_CORPUS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace subseg {

// Boundary marker used by the subword codec unless overridden.
inline constexpr std::string_view kDefaultMarker = "_";

// One line of input: whitespace-delimited surface tokens. Tokens are never
// empty, never contain whitespace, and never contain the boundary marker.
struct Sentence {
  std::vector<std::string> tokens;

  bool empty() const { return tokens.empty(); }
  std::string joined() const;  // tokens joined by single spaces
};

enum class Normalization { kNfc, kNone };

// Immutable after load; line order is exactly the source file's.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Sentence> sentences)
      : sentences_(std::move(sentences)) {}

  static Corpus load_file(const std::string& path,
                          Normalization norm = Normalization::kNfc,
                          std::string_view marker = kDefaultMarker);
  static Corpus from_text(std::string_view text,
                          Normalization norm = Normalization::kNfc,
                          std::string_view marker = kDefaultMarker);

  const std::vector<Sentence>& sentences() const { return sentences_; }
  size_t line_count() const { return sentences_.size(); }
  size_t token_count() const;

  void write_file(const std::string& path) const;
  std::string to_text() const;  // one joined sentence per line, LF terminated

 private:
  std::vector<Sentence> sentences_;
};

enum class VocabLevel { kWord, kChar };

// Unit -> occurrence count. Word level counts whitespace tokens, char level
// counts Unicode scalar values inside tokens.
std::unordered_map<std::string, uint64_t> vocabulary(const Corpus& corpus,
                                                     VocabLevel level);

// "<unit><TAB><count>" rows under a "<unit_label>\tcount" header, sorted by
// count descending then unit ascending.
std::string format_vocab_tsv(
    const std::unordered_map<std::string, uint64_t>& counts,
    std::string_view unit_label);

struct ParallelCorpus {
  Corpus source;
  Corpus target;

  // Throws Error(kAlignment) when the sides differ in line count.
  void check_aligned() const;
};

}  // namespace subseg

#endif  // SUBSEG_CORPUS_HPP
