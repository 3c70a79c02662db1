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

#ifndef SUBSEG_SRC_TRANSLIT_HPP_
#define SUBSEG_SRC_TRANSLIT_HPP_

#include <cstdint>
#include <optional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.hpp"

namespace subseg {

// Character mapping between two same-size script blocks. Codepoints inside
// the source block move to the target block by a fixed offset unless an
// exception entry overrides them or the source codepoint is marked
// unassigned; everything else passes through unchanged.
struct TransliterationTable {
  std::string source_name;
  std::string target_name;
  char32_t source_base = 0;
  char32_t target_base = 0;
  uint32_t block_size = 0x80;

  // Exact overrides, applied before the offset rule. Values in the private
  // use area act as placeholders for source characters with no counterpart
  // in the target block.
  std::map<char32_t, char32_t> exceptions;

  // Offsets within the source block that do not name a character. They are
  // preserved verbatim instead of being offset-mapped.
  std::vector<bool> source_unassigned;

  bool in_source_block(char32_t cp) const {
    return cp >= source_base && cp < source_base + block_size;
  }

  // Maps one codepoint. Returns nullopt when the input is preserved
  // verbatim (outside the block, or unassigned inside it).
  std::optional<char32_t> map_codepoint(char32_t cp) const;

  // Throws Error(kInvalidArgument) if exception outputs collide with each
  // other or with an offset-mapped output.
  void validate() const;
};

constexpr char32_t kPlaceholderBase = 0xE000;
constexpr double kDefaultOverlapThreshold = 0.1;

struct TranslitStats {
  uint64_t offset_mapped = 0;
  uint64_t exceptions_applied = 0;
  uint64_t placeholders_emitted = 0;  // subset of exceptions_applied
  uint64_t unassigned_preserved = 0;
  uint64_t passed_through = 0;
};

// Builds the table for two script blocks known to the library (devanagari,
// bengali, gurmukhi, tamil, telugu, malayalam). Source characters whose
// target slot is unassigned map to private use placeholders U+E000+offset.
// Throws Error(kUnsupported) for unknown names, Error(kInvalidArgument)
// when from == to.
TransliterationTable builtin_translit_table(const std::string& from,
                                            const std::string& to);

const std::vector<std::string>& builtin_translit_scripts();

// Adds "U+XXXX U+YYYY" override lines from a file; later entries win.
// Re-validates the table. Throws Error(kIo) or Error(kParse).
void load_exceptions_file(TransliterationTable& table,
                          const std::string& path);

std::string transliterate(std::string_view text,
                          const TransliterationTable& table,
                          TranslitStats* stats = nullptr);

Corpus transliterate(const Corpus& corpus, const TransliterationTable& table,
                     TranslitStats* stats = nullptr);

// Fraction of corpus characters that fall inside the source block.
// Returns 0.0 for a corpus with no characters.
double mappable_fraction(const Corpus& corpus,
                         const TransliterationTable& table);

}  // namespace subseg

#endif  // SUBSEG_SRC_TRANSLIT_HPP_
