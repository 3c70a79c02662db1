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

#include "corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "unicode_norm.hpp"
#include "utf8.hpp"

namespace subseg {

namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\v' || c == '\f' || c == '\r';
}

Sentence parse_line(std::string_view line, Normalization norm,
                    std::string_view marker, size_t line_number,
                    size_t line_byte_offset) {
  // Validate (and locate errors in) the raw line before normalizing.
  if (auto rel = utf8::find_invalid(line)) {
    throw Error(ErrorCode::kUtf8, "invalid UTF-8 at byte offset " +
                                      std::to_string(line_byte_offset + *rel) +
                                      " (line " + std::to_string(line_number) + ")");
  }

  std::string normalized;
  if (norm == Normalization::kNfc) {
    normalized = unicode::nfc(line);
    line = normalized;
  }

  Sentence s;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_ascii_space(line[i])) ++i;
    size_t start = i;
    while (i < line.size() && !is_ascii_space(line[i])) ++i;
    if (i > start) {
      std::string token(line.substr(start, i - start));
      if (!marker.empty() && token.find(marker) != std::string::npos) {
        throw Error(ErrorCode::kInvalidArgument,
                    "token contains the reserved boundary marker \"" +
                        std::string(marker) + "\" (line " +
                        std::to_string(line_number) + ")");
      }
      s.tokens.push_back(std::move(token));
    }
  }
  return s;
}

Corpus parse_text(std::string_view text, Normalization norm,
                  std::string_view marker) {
  std::vector<Sentence> sentences;
  size_t pos = 0;
  size_t line_number = 1;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    size_t end = (eol == std::string_view::npos) ? text.size() : eol;
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    sentences.push_back(parse_line(line, norm, marker, line_number, pos));
    pos = (eol == std::string_view::npos) ? text.size() : eol + 1;
    ++line_number;
  }
  return Corpus(std::move(sentences));
}

}  // namespace

std::string Sentence::joined() const {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

Corpus Corpus::load_file(const std::string& path, Normalization norm,
                         std::string_view marker) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorCode::kIo, "read failure on " + path);
  }
  return parse_text(buf.str(), norm, marker);
}

Corpus Corpus::from_text(std::string_view text, Normalization norm,
                         std::string_view marker) {
  return parse_text(text, norm, marker);
}

size_t Corpus::token_count() const {
  size_t n = 0;
  for (const Sentence& s : sentences_) n += s.tokens.size();
  return n;
}

std::string Corpus::to_text() const {
  std::string out;
  for (const Sentence& s : sentences_) {
    out += s.joined();
    out.push_back('\n');
  }
  return out;
}

void Corpus::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  }
  out << to_text();
  if (!out.flush()) {
    throw Error(ErrorCode::kIo, "write failure on " + path);
  }
}

std::unordered_map<std::string, uint64_t> vocabulary(const Corpus& corpus,
                                                     VocabLevel level) {
  std::unordered_map<std::string, uint64_t> counts;
  for (const Sentence& s : corpus.sentences()) {
    for (const std::string& token : s.tokens) {
      if (level == VocabLevel::kWord) {
        ++counts[token];
      } else {
        size_t pos = 0;
        char32_t cp;
        while (utf8::decode_next(token, pos, cp)) {
          std::string unit;
          utf8::append(unit, cp);
          ++counts[unit];
        }
      }
    }
  }
  return counts;
}

std::string format_vocab_tsv(
    const std::unordered_map<std::string, uint64_t>& counts,
    std::string_view unit_label) {
  std::vector<std::pair<std::string, uint64_t>> rows(counts.begin(),
                                                     counts.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::string tsv = std::string(unit_label) + "\tcount\n";
  for (const auto& [unit, count] : rows) {
    tsv += unit;
    tsv += '\t';
    tsv += std::to_string(count);
    tsv += '\n';
  }
  return tsv;
}

void ParallelCorpus::check_aligned() const {
  if (source.line_count() != target.line_count()) {
    throw Error(ErrorCode::kAlignment,
                "corpora are not sentence-aligned: " +
                    std::to_string(source.line_count()) + " vs " +
                    std::to_string(target.line_count()) + " lines");
  }
}

}  // namespace subseg
