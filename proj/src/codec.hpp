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

#ifndef SUBSEG_SRC_CODEC_HPP_
#define SUBSEG_SRC_CODEC_HPP_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bpe.hpp"
#include "corpus.hpp"

namespace subseg {

// Splits one word into subwords. Implementations are stateless and safe to
// call from multiple threads.
class WordSegmenter {
 public:
  virtual ~WordSegmenter() = default;

  // Returned subwords are non-empty and concatenate back to the word.
  virtual std::vector<std::string> segment_word(
      const std::string& word) const = 0;
};

// Every character becomes its own subword.
class CharSegmenter : public WordSegmenter {
 public:
  std::vector<std::string> segment_word(const std::string& word) const override;
};

// Applies a learned merge table. Does not own the model.
class BpeSegmenter : public WordSegmenter {
 public:
  explicit BpeSegmenter(const BpeModel& model) : model_(&model) {}
  std::vector<std::string> segment_word(const std::string& word) const override;

 private:
  const BpeModel* model_;
};

// One sentence in marker form: subword units with a standalone boundary
// marker token between consecutive words.
struct SegmentedText {
  std::vector<std::string> units;

  std::string joined() const;  // units joined by single spaces
};

// Inserts the marker between words, never at the ends. A word's subwords
// keep their order. Segmenter failures and broken segmenter output
// (empty subwords, concatenation mismatch) are reported with the index of
// the offending word.
SegmentedText segment(const Sentence& sentence, const WordSegmenter& segmenter,
                      std::string_view marker = kDefaultMarker);

// Inverse of segment on well-formed input, tolerant otherwise: marker runs
// at the ends or between words collapse, so no empty words are produced.
Sentence desegment(const SegmentedText& text,
                   std::string_view marker = kDefaultMarker);

// True when the unit sequence could have been produced by segment():
// no marker at either end, no adjacent markers, no empty units.
bool is_canonical(const SegmentedText& text,
                  std::string_view marker = kDefaultMarker);

// Line-by-line corpus forms. Each output line holds the units of one input
// line joined by single spaces. A word-type cache makes repeated words
// cheap, so segmenters themselves stay stateless.
Corpus segment_corpus(const Corpus& corpus, const WordSegmenter& segmenter,
                      std::string_view marker = kDefaultMarker);
Corpus desegment_corpus(const Corpus& corpus,
                        std::string_view marker = kDefaultMarker);

}  // namespace subseg

#endif  // SUBSEG_SRC_CODEC_HPP_
