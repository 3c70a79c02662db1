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

#ifndef SUBSEG_SRC_ORTHO_HPP_
#define SUBSEG_SRC_ORTHO_HPP_

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "codec.hpp"

namespace subseg {

enum class ScriptKind { kAlphabet, kAbugida };

enum class CharClass { kVowel, kConsonant, kCombining, kOther };

// Character inventory of one script. Vowels cover both independent letters
// and dependent signs; combining marks attach to the unit before them.
struct ScriptSpec {
  std::string name;
  ScriptKind kind = ScriptKind::kAlphabet;
  std::unordered_set<char32_t> vowels;
  std::unordered_set<char32_t> consonants;
  std::unordered_set<char32_t> combining;
  char32_t block_base = 0;  // abugida block start, e.g. U+0900
  char32_t virama = 0;      // consonant-cluster joiner; 0 outside abugidas

  CharClass classify(char32_t cp) const;

  // Throws Error(kInvalidArgument) when the classes overlap or required
  // abugida fields are missing.
  void validate() const;
};

// Splits a word into orthographic syllables. Alphabet scripts produce
// maximal C*V+ units; a consonant run with no vowel to its right before the
// unit closes stays a unit of its own. Abugida scripts close a unit after
// the vowel (dependent or independent) plus trailing combining marks, carry
// virama-joined consonant clusters into one unit when the cluster precedes
// a vowel, and give bare consonants their inherent vowel. Characters in
// neither class are singleton units; combining marks attach to the unit
// being built. Units always concatenate back to the word.
std::vector<std::string> syllabify(std::string_view word,
                                   const ScriptSpec& spec);

class OrthoSegmenter : public WordSegmenter {
 public:
  explicit OrthoSegmenter(const ScriptSpec& spec) : spec_(&spec) {}
  std::vector<std::string> segment_word(const std::string& word) const override;

 private:
  const ScriptSpec* spec_;
};

// Script spec file format: '[vowels]', '[consonants]', '[combining]'
// sections list characters one line at a time, either literally or as
// 'U+XXXX' / 'U+XXXX..U+YYYY'; a '[meta]' section holds 'name', 'kind'
// (alphabet or abugida), and for abugidas 'block_base' plus an optional
// 'virama' override (default block_base + 0x4D). '#' starts a comment.
ScriptSpec parse_script_spec(std::string_view text,
                             const std::string& source_name);
ScriptSpec load_script_spec(const std::string& path);
std::string serialize_script_spec(const ScriptSpec& spec);

// Scripts compiled into the library.
const std::vector<std::string>& builtin_script_names();
bool has_builtin_script(const std::string& name);
ScriptSpec builtin_script(const std::string& name);
std::string builtin_script_text(const std::string& name);

// Loads a builtin script by name, or a spec file when the argument names
// an existing file.
ScriptSpec resolve_script(const std::string& name_or_path);

}  // namespace subseg

#endif  // SUBSEG_SRC_ORTHO_HPP_
