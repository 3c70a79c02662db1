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

#include "unicode_norm.hpp"

#include <algorithm>
#include <cstdint>

#include "utf8.hpp"

namespace subseg::unicode {

namespace {

#include "unicode_data.inc"

constexpr char32_t kHangulSBase = 0xAC00;
constexpr char32_t kHangulLBase = 0x1100;
constexpr char32_t kHangulVBase = 0x1161;
constexpr char32_t kHangulTBase = 0x11A7;
constexpr int kHangulLCount = 19;
constexpr int kHangulVCount = 21;
constexpr int kHangulTCount = 28;
constexpr int kHangulNCount = kHangulVCount * kHangulTCount;
constexpr int kHangulSCount = kHangulLCount * kHangulNCount;

bool is_hangul_syllable(char32_t cp) {
  return cp >= kHangulSBase && cp < kHangulSBase + kHangulSCount;
}

const DecompRow* find_decomp(char32_t cp) {
  auto it = std::lower_bound(std::begin(kDecompRows), std::end(kDecompRows), cp,
                             [](const DecompRow& r, char32_t c) { return r.cp < c; });
  if (it != std::end(kDecompRows) && it->cp == cp) return &*it;
  return nullptr;
}

// Primary composite for (a, b), or 0 when the pair does not compose.
char32_t compose_pair(char32_t a, char32_t b) {
  // Algorithmic Hangul: L+V and LV+T.
  if (a >= kHangulLBase && a < kHangulLBase + kHangulLCount &&
      b >= kHangulVBase && b < kHangulVBase + kHangulVCount) {
    return kHangulSBase +
           ((a - kHangulLBase) * kHangulVCount + (b - kHangulVBase)) * kHangulTCount;
  }
  if (is_hangul_syllable(a) && (a - kHangulSBase) % kHangulTCount == 0 &&
      b > kHangulTBase && b < kHangulTBase + kHangulTCount) {
    return a + (b - kHangulTBase);
  }
  auto it = std::lower_bound(
      std::begin(kCompRows), std::end(kCompRows), std::pair<char32_t, char32_t>(a, b),
      [](const CompRow& r, const std::pair<char32_t, char32_t>& key) {
        return r.first != key.first ? r.first < key.first : r.second < key.second;
      });
  if (it != std::end(kCompRows) && it->first == a && it->second == b) {
    return it->composite;
  }
  return 0;
}

void decompose_into(char32_t cp, std::vector<char32_t>& out) {
  if (is_hangul_syllable(cp)) {
    const int index = cp - kHangulSBase;
    out.push_back(kHangulLBase + index / kHangulNCount);
    out.push_back(kHangulVBase + (index % kHangulNCount) / kHangulTCount);
    const int t = index % kHangulTCount;
    if (t != 0) out.push_back(kHangulTBase + t);
    return;
  }
  if (const DecompRow* row = find_decomp(cp)) {
    for (uint32_t i = 0; i < row->length; ++i) {
      out.push_back(kDecompPool[row->offset + i]);
    }
    return;
  }
  out.push_back(cp);
}

}  // namespace

int combining_class(char32_t cp) {
  auto it = std::lower_bound(std::begin(kCccRows), std::end(kCccRows), cp,
                             [](const CccRow& r, char32_t c) { return r.cp < c; });
  if (it != std::end(kCccRows) && it->cp == cp) return it->ccc;
  return 0;
}

std::vector<char32_t> nfc(const std::vector<char32_t>& in) {
  std::vector<char32_t> buf;
  buf.reserve(in.size());
  for (char32_t cp : in) decompose_into(cp, buf);

  // Canonical ordering: stable sort of nonzero-ccc runs by combining class.
  for (size_t i = 1; i < buf.size(); ++i) {
    const int cc = combining_class(buf[i]);
    if (cc == 0) continue;
    size_t j = i;
    while (j > 0 && combining_class(buf[j - 1]) > cc) {
      std::swap(buf[j - 1], buf[j]);
      --j;
    }
  }

  // Canonical composition (UAX #15 recomposition over the decomposed buffer).
  std::vector<char32_t> out;
  out.reserve(buf.size());
  int last_starter = -1;
  int prev_ccc = -1;  // ccc of the previous character kept in `out`
  for (char32_t cp : buf) {
    const int cc = combining_class(cp);
    if (last_starter >= 0) {
      const bool blocked =
          (static_cast<int>(out.size()) - 1 > last_starter) && prev_ccc >= cc;
      if (!blocked) {
        if (char32_t comp = compose_pair(out[last_starter], cp)) {
          out[last_starter] = comp;
          // prev_ccc keeps the class of the last uncomposed character.
          continue;
        }
      }
    }
    if (cc == 0) last_starter = static_cast<int>(out.size());
    prev_ccc = cc;
    out.push_back(cp);
  }
  return out;
}

std::string nfc(std::string_view utf8_text) {
  return utf8::encode(nfc(utf8::decode(utf8_text)));
}

const std::vector<IndicBlockInfo>& indic_blocks() {
  static const std::vector<IndicBlockInfo> blocks = [] {
    std::vector<IndicBlockInfo> v;
    for (const auto& row : kIndicBlocks) {
      v.push_back(IndicBlockInfo{row.name, row.base, row.assigned_lo,
                                 row.assigned_hi});
    }
    return v;
  }();
  return blocks;
}

const IndicBlockInfo* find_indic_block(std::string_view name) {
  for (const auto& block : indic_blocks()) {
    if (name == block.name) return &block;
  }
  return nullptr;
}

}  // namespace subseg::unicode
