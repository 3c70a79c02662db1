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

#include "utf8.hpp"

#include "error.hpp"

namespace subseg::utf8 {

namespace {

[[noreturn]] void bad_byte(size_t offset) {
  throw Error(ErrorCode::kUtf8,
              "invalid UTF-8 at byte offset " + std::to_string(offset));
}

}  // namespace

bool decode_next(std::string_view s, size_t& pos, char32_t& out) {
  if (pos >= s.size()) return false;
  const size_t start = pos;
  const unsigned char b0 = static_cast<unsigned char>(s[pos]);
  char32_t cp = 0;
  size_t extra = 0;
  if (b0 < 0x80) {
    out = b0;
    ++pos;
    return true;
  } else if ((b0 & 0xE0) == 0xC0) {
    cp = b0 & 0x1F;
    extra = 1;
  } else if ((b0 & 0xF0) == 0xE0) {
    cp = b0 & 0x0F;
    extra = 2;
  } else if ((b0 & 0xF8) == 0xF0) {
    cp = b0 & 0x07;
    extra = 3;
  } else {
    bad_byte(start);
  }
  if (pos + extra >= s.size()) bad_byte(start);
  for (size_t i = 1; i <= extra; ++i) {
    const unsigned char b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) bad_byte(start);
    cp = (cp << 6) | (b & 0x3F);
  }
  // Reject overlong forms, surrogates, and out-of-range scalars.
  static constexpr char32_t kMin[4] = {0, 0x80, 0x800, 0x10000};
  if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    bad_byte(start);
  }
  pos += 1 + extra;
  out = cp;
  return true;
}

std::optional<size_t> find_invalid(std::string_view s) {
  size_t pos = 0;
  char32_t cp;
  try {
    while (decode_next(s, pos, cp)) {
    }
  } catch (const Error&) {
    return pos;
  }
  return std::nullopt;
}

std::vector<char32_t> decode(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  size_t pos = 0;
  char32_t cp;
  while (decode_next(s, pos, cp)) out.push_back(cp);
  return out;
}

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append(out, cp);
  return out;
}

size_t length(std::string_view s) {
  size_t n = 0, pos = 0;
  char32_t cp;
  while (decode_next(s, pos, cp)) ++n;
  return n;
}

}  // namespace subseg::utf8
