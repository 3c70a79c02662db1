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

#include "codec.hpp"

#include <unordered_map>

#include "error.hpp"
#include "utf8.hpp"

namespace subseg {

std::vector<std::string> CharSegmenter::segment_word(
    const std::string& word) const {
  std::vector<std::string> units;
  size_t pos = 0;
  char32_t cp;
  while (utf8::decode_next(word, pos, cp)) {
    std::string ch;
    utf8::append(ch, cp);
    units.push_back(std::move(ch));
  }
  return units;
}

std::vector<std::string> BpeSegmenter::segment_word(
    const std::string& word) const {
  return apply_bpe(*model_, word);
}

std::string SegmentedText::joined() const {
  std::string out;
  for (size_t i = 0; i < units.size(); ++i) {
    if (i) out += ' ';
    out += units[i];
  }
  return out;
}

namespace {

std::vector<std::string> segment_checked(const WordSegmenter& segmenter,
                                         const std::string& word,
                                         size_t word_idx) {
  std::vector<std::string> units;
  try {
    units = segmenter.segment_word(word);
  } catch (const Error& e) {
    throw Error(e.code(), "word " + std::to_string(word_idx) + " ('" + word +
                              "'): " + e.what());
  }
  std::string concat;
  for (const std::string& unit : units) {
    if (unit.empty()) {
      throw Error(ErrorCode::kInternal,
                  "word " + std::to_string(word_idx) +
                      ": segmenter produced an empty subword");
    }
    concat += unit;
  }
  if (concat != word) {
    throw Error(ErrorCode::kInternal,
                "word " + std::to_string(word_idx) +
                    ": subwords do not concatenate back to the word");
  }
  return units;
}

}  // namespace

SegmentedText segment(const Sentence& sentence, const WordSegmenter& segmenter,
                      std::string_view marker) {
  SegmentedText out;
  for (size_t w = 0; w < sentence.tokens.size(); ++w) {
    if (w) out.units.emplace_back(marker);
    auto units = segment_checked(segmenter, sentence.tokens[w], w);
    for (auto& unit : units) out.units.push_back(std::move(unit));
  }
  return out;
}

Sentence desegment(const SegmentedText& text, std::string_view marker) {
  Sentence out;
  std::string current;
  bool in_word = false;
  for (const std::string& unit : text.units) {
    if (unit == marker) {
      if (in_word) {
        out.tokens.push_back(std::move(current));
        current.clear();
        in_word = false;
      }
      continue;
    }
    if (unit.empty()) continue;
    current += unit;
    in_word = true;
  }
  if (in_word) out.tokens.push_back(std::move(current));
  return out;
}

bool is_canonical(const SegmentedText& text, std::string_view marker) {
  const auto& units = text.units;
  for (size_t i = 0; i < units.size(); ++i) {
    if (units[i].empty()) return false;
    if (units[i] == marker) {
      if (i == 0 || i + 1 == units.size()) return false;
      if (units[i + 1] == marker) return false;
    }
  }
  return true;
}

Corpus segment_corpus(const Corpus& corpus, const WordSegmenter& segmenter,
                      std::string_view marker) {
  std::unordered_map<std::string, std::vector<std::string>> cache;
  std::vector<Sentence> out;
  out.reserve(corpus.line_count());
  for (const Sentence& sentence : corpus.sentences()) {
    Sentence line;
    for (size_t w = 0; w < sentence.tokens.size(); ++w) {
      if (w) line.tokens.emplace_back(marker);
      const std::string& word = sentence.tokens[w];
      auto it = cache.find(word);
      if (it == cache.end()) {
        it = cache.emplace(word, segment_checked(segmenter, word, w)).first;
      }
      for (const auto& unit : it->second) line.tokens.push_back(unit);
    }
    out.push_back(std::move(line));
  }
  return Corpus(std::move(out));
}

Corpus desegment_corpus(const Corpus& corpus, std::string_view marker) {
  std::vector<Sentence> out;
  out.reserve(corpus.line_count());
  for (const Sentence& sentence : corpus.sentences()) {
    SegmentedText text;
    text.units = sentence.tokens;
    out.push_back(desegment(text, marker));
  }
  return Corpus(std::move(out));
}

}  // namespace subseg
