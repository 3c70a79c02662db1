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

#ifndef SUBSEG_UNICODE_NORM_HPP
#define SUBSEG_UNICODE_NORM_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace subseg::unicode {

// Canonical combining class; 0 for starters and unknown codepoints.
int combining_class(char32_t cp);

// Assignment data for the 0x80-wide Indic script blocks used by the
// transliteration tables.
struct IndicBlockInfo {
  const char* name;
  char32_t base;
  uint64_t assigned_lo;
  uint64_t assigned_hi;

  bool assigned(uint32_t offset) const {
    if (offset >= 0x80) return false;
    return offset < 64 ? (assigned_lo >> offset) & 1
                       : (assigned_hi >> (offset - 64)) & 1;
  }
};

const std::vector<IndicBlockInfo>& indic_blocks();
const IndicBlockInfo* find_indic_block(std::string_view name);

// NFC: canonical decomposition, canonical ordering, canonical composition.
// Hangul syllables are composed/decomposed algorithmically; everything else
// comes from the generated UCD tables in unicode_data.inc.
std::vector<char32_t> nfc(const std::vector<char32_t>& in);
std::string nfc(std::string_view utf8_text);

}  // namespace subseg::unicode

#endif  // SUBSEG_UNICODE_NORM_HPP
