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

#include "translit.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "error.hpp"
#include "strings.hpp"
#include "unicode_norm.hpp"
#include "utf8.hpp"

namespace subseg {

std::optional<char32_t> TransliterationTable::map_codepoint(
    char32_t cp) const {
  auto it = exceptions.find(cp);
  if (it != exceptions.end()) return it->second;
  if (!in_source_block(cp)) return std::nullopt;
  uint32_t offset = cp - source_base;
  if (offset < source_unassigned.size() && source_unassigned[offset]) {
    return std::nullopt;
  }
  return target_base + offset;
}

void TransliterationTable::validate() const {
  std::set<char32_t> outputs;
  for (const auto& [src, dst] : exceptions) {
    if (!outputs.insert(dst).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "transliteration exceptions map two characters to " +
                      strings::format_codepoint(dst));
    }
  }
  for (const auto& [src, dst] : exceptions) {
    if (dst < target_base || dst >= target_base + block_size) continue;
    char32_t equivalent_src = source_base + (dst - target_base);
    if (exceptions.count(equivalent_src)) continue;
    uint32_t offset = dst - target_base;
    if (offset < source_unassigned.size() && source_unassigned[offset]) {
      continue;
    }
    throw Error(ErrorCode::kInvalidArgument,
                "transliteration exception " + strings::format_codepoint(src) +
                    " -> " + strings::format_codepoint(dst) +
                    " collides with the offset-mapped output of " +
                    strings::format_codepoint(equivalent_src));
  }
}

const std::vector<std::string>& builtin_translit_scripts() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& block : unicode::indic_blocks()) v.push_back(block.name);
    return v;
  }();
  return names;
}

TransliterationTable builtin_translit_table(const std::string& from,
                                            const std::string& to) {
  const unicode::IndicBlockInfo* src = unicode::find_indic_block(from);
  const unicode::IndicBlockInfo* dst = unicode::find_indic_block(to);
  if (!src || !dst) {
    std::string known;
    for (const auto& name : builtin_translit_scripts()) {
      if (!known.empty()) known += ", ";
      known += name;
    }
    throw Error(ErrorCode::kUnsupported,
                "no builtin transliteration for script '" +
                    (src ? to : from) + "' (known scripts: " + known + ")");
  }
  if (src == dst) {
    throw Error(ErrorCode::kInvalidArgument,
                "source and target scripts are both '" + from + "'");
  }
  TransliterationTable table;
  table.source_name = from;
  table.target_name = to;
  table.source_base = src->base;
  table.target_base = dst->base;
  table.block_size = 0x80;
  table.source_unassigned.assign(table.block_size, false);
  for (uint32_t off = 0; off < table.block_size; ++off) {
    if (!src->assigned(off)) {
      table.source_unassigned[off] = true;
    } else if (!dst->assigned(off)) {
      table.exceptions[src->base + off] = kPlaceholderBase + off;
    }
  }
  table.validate();
  return table;
}

void load_exceptions_file(TransliterationTable& table,
                          const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open exceptions file: " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  size_t line_no = 0;
  for (std::string_view raw : strings::split_lines(text)) {
    ++line_no;
    std::string_view line = strings::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto fields = strings::split_ws(line);
    if (fields.size() != 2) {
      throw Error(ErrorCode::kParse,
                  path + ":" + std::to_string(line_no) +
                      ": expected 'U+XXXX U+YYYY', got '" + std::string(line) +
                      "'");
    }
    auto src = strings::parse_codepoint_literal(fields[0]);
    auto dst = strings::parse_codepoint_literal(fields[1]);
    if (!src || !dst) {
      throw Error(ErrorCode::kParse,
                  path + ":" + std::to_string(line_no) +
                      ": malformed codepoint literal");
    }
    table.exceptions[*src] = *dst;
  }
  table.validate();
}

std::string transliterate(std::string_view text,
                          const TransliterationTable& table,
                          TranslitStats* stats) {
  std::string out;
  out.reserve(text.size());
  size_t pos = 0;
  char32_t cp;
  while (utf8::decode_next(text, pos, cp)) {
    auto exc = table.exceptions.find(cp);
    if (exc != table.exceptions.end()) {
      utf8::append(out, exc->second);
      if (stats) {
        ++stats->exceptions_applied;
        if (exc->second >= kPlaceholderBase &&
            exc->second < kPlaceholderBase + table.block_size) {
          ++stats->placeholders_emitted;
        }
      }
      continue;
    }
    if (table.in_source_block(cp)) {
      uint32_t offset = cp - table.source_base;
      if (offset < table.source_unassigned.size() &&
          table.source_unassigned[offset]) {
        utf8::append(out, cp);
        if (stats) ++stats->unassigned_preserved;
      } else {
        utf8::append(out, table.target_base + offset);
        if (stats) ++stats->offset_mapped;
      }
    } else {
      utf8::append(out, cp);
      if (stats) ++stats->passed_through;
    }
  }
  return out;
}

Corpus transliterate(const Corpus& corpus, const TransliterationTable& table,
                     TranslitStats* stats) {
  std::vector<Sentence> mapped;
  mapped.reserve(corpus.line_count());
  for (const Sentence& sentence : corpus.sentences()) {
    Sentence out;
    out.tokens.reserve(sentence.tokens.size());
    for (const std::string& token : sentence.tokens) {
      out.tokens.push_back(transliterate(token, table, stats));
    }
    mapped.push_back(std::move(out));
  }
  return Corpus(std::move(mapped));
}

double mappable_fraction(const Corpus& corpus,
                         const TransliterationTable& table) {
  uint64_t total = 0;
  uint64_t inside = 0;
  for (const Sentence& sentence : corpus.sentences()) {
    for (const std::string& token : sentence.tokens) {
      size_t pos = 0;
      char32_t cp;
      while (utf8::decode_next(token, pos, cp)) {
        ++total;
        if (table.in_source_block(cp)) ++inside;
      }
    }
  }
  if (total == 0) return 0.0;
  return static_cast<double>(inside) / static_cast<double>(total);
}

}  // namespace subseg
