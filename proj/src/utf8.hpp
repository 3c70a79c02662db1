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

#ifndef SUBSEG_UTF8_HPP
#define SUBSEG_UTF8_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace subseg::utf8 {

// Byte offset of the first invalid sequence, or nullopt for valid input.
std::optional<size_t> find_invalid(std::string_view s);

// Decodes a whole string. Throws Error(kUtf8) naming the byte offset of the
// first invalid sequence (offset is relative to the start of `s`).
std::vector<char32_t> decode(std::string_view s);

// Decodes one scalar value starting at s[pos]; advances pos past it.
// Returns false at end of input, throws Error(kUtf8) on malformed bytes.
bool decode_next(std::string_view s, size_t& pos, char32_t& out);

void append(std::string& out, char32_t cp);
std::string encode(const std::vector<char32_t>& cps);

// Number of scalar values; input must be valid UTF-8.
size_t length(std::string_view s);

}  // namespace subseg::utf8

#endif  // SUBSEG_UTF8_HPP
