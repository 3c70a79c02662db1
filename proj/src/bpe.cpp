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

#include "bpe.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "error.hpp"
#include "strings.hpp"
#include "utf8.hpp"

namespace subseg {
namespace {

using PairKey = uint64_t;

PairKey pack_pair(int a, int b) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
         static_cast<uint32_t>(b);
}

// Incremental pair-count learner. Keeps, for every adjacent symbol pair,
// its frequency-weighted occurrence count and the set of word types it
// appears in, so each merge step touches only the affected words.
struct Learner {
  std::vector<std::string> sym;
  std::unordered_map<std::string, int> sym_id;
  std::vector<std::vector<int>> words;
  std::vector<int64_t> freqs;
  std::unordered_map<PairKey, int64_t> pair_count;
  std::unordered_map<PairKey, std::unordered_set<int>> pair_words;
  std::vector<int64_t> sym_occurrences;
  size_t distinct_symbols = 0;
  std::set<std::string> alphabet;

  int intern(const std::string& s) {
    auto it = sym_id.find(s);
    if (it != sym_id.end()) return it->second;
    int id = static_cast<int>(sym.size());
    sym.push_back(s);
    sym_id.emplace(s, id);
    sym_occurrences.push_back(0);
    return id;
  }

  void bump_symbol(int id, int64_t delta) {
    int64_t before = sym_occurrences[id];
    sym_occurrences[id] += delta;
    if (before == 0 && sym_occurrences[id] > 0) {
      ++distinct_symbols;
    } else if (before > 0 && sym_occurrences[id] == 0) {
      --distinct_symbols;
    }
  }

  void bump_pair(int a, int b, int64_t delta, int word_idx) {
    PairKey key = pack_pair(a, b);
    auto [it, inserted] = pair_count.try_emplace(key, 0);
    it->second += delta;
    if (it->second == 0) {
      pair_count.erase(it);
      pair_words.erase(key);
      return;
    }
    if (delta > 0) pair_words[key].insert(word_idx);
  }

  void init(const WordFreqTable& table) {
    for (const auto& [word, freq] : table) {
      std::vector<int> ids;
      size_t pos = 0;
      char32_t cp;
      while (utf8::decode_next(word, pos, cp)) {
        std::string ch;
        utf8::append(ch, cp);
        ids.push_back(intern(ch));
      }
      if (ids.empty()) continue;
      words.push_back(std::move(ids));
      freqs.push_back(static_cast<int64_t>(freq));
    }
    alphabet.insert(sym.begin(), sym.end());
    for (size_t w = 0; w < words.size(); ++w) {
      const auto& ids = words[w];
      int64_t f = freqs[w];
      for (size_t i = 0; i + 1 < ids.size(); ++i) {
        bump_pair(ids[i], ids[i + 1], f, static_cast<int>(w));
      }
      for (int id : ids) bump_symbol(id, f);
    }
  }

  // Highest-count pair with count >= 2; ties break toward the bytewise
  // smallest (left, right) strings.
  std::optional<std::pair<int, int>> best_pair() const {
    int64_t best_count = 1;
    int best_a = -1;
    int best_b = -1;
    for (const auto& [key, count] : pair_count) {
      int a = static_cast<int>(key >> 32);
      int b = static_cast<int>(key & 0xFFFFFFFFu);
      if (count > best_count) {
        best_count = count;
        best_a = a;
        best_b = b;
      } else if (count == best_count && best_a >= 0) {
        if (std::tie(sym[a], sym[b]) < std::tie(sym[best_a], sym[best_b])) {
          best_a = a;
          best_b = b;
        }
      }
    }
    if (best_a < 0) return std::nullopt;
    return std::make_pair(best_a, best_b);
  }

  void apply_merge(int a, int b, int c) {
    auto bucket = pair_words.find(pack_pair(a, b));
    if (bucket == pair_words.end()) return;
    std::vector<int> occurrences(bucket->second.begin(), bucket->second.end());
    std::sort(occurrences.begin(), occurrences.end());
    for (int w : occurrences) {
      const std::vector<int>& old_word = words[w];
      std::vector<int> new_word;
      new_word.reserve(old_word.size());
      bool fired = false;
      size_t i = 0;
      while (i < old_word.size()) {
        if (i + 1 < old_word.size() && old_word[i] == a &&
            old_word[i + 1] == b) {
          new_word.push_back(c);
          i += 2;
          fired = true;
        } else {
          new_word.push_back(old_word[i]);
          ++i;
        }
      }
      if (!fired) continue;  // stale index left behind by lazy cleanup
      int64_t f = freqs[w];
      for (size_t k = 0; k + 1 < old_word.size(); ++k) {
        bump_pair(old_word[k], old_word[k + 1], -f, w);
      }
      for (int id : old_word) bump_symbol(id, -f);
      for (size_t k = 0; k + 1 < new_word.size(); ++k) {
        bump_pair(new_word[k], new_word[k + 1], f, w);
      }
      for (int id : new_word) bump_symbol(id, f);
      words[w] = std::move(new_word);
    }
  }
};

enum class StopMode { kMergeCount, kTargetVocab };

struct LearnOutcome {
  BpeModel model;
  size_t distinct = 0;
  bool exhausted = false;
};

LearnOutcome run_learner(const WordFreqTable& table, StopMode mode,
                         size_t limit) {
  Learner learner;
  learner.init(table);
  if (learner.words.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot learn a subword model from an empty corpus");
  }
  LearnOutcome out;
  out.model.alphabet = learner.alphabet;
  while (true) {
    if (mode == StopMode::kMergeCount && out.model.merges.size() >= limit) {
      break;
    }
    if (mode == StopMode::kTargetVocab && learner.distinct_symbols >= limit) {
      break;
    }
    auto best = learner.best_pair();
    if (!best) {
      out.exhausted = true;
      break;
    }
    auto [a, b] = *best;
    std::string left = learner.sym[a];
    std::string right = learner.sym[b];
    out.model.merges.push_back(MergeRule{left, right});
    int c = learner.intern(left + right);
    learner.apply_merge(a, b, c);
  }
  out.distinct = learner.distinct_symbols;
  return out;
}

}  // namespace

WordFreqTable word_frequencies(const Corpus& corpus) {
  WordFreqTable table;
  for (const Sentence& sentence : corpus.sentences()) {
    for (const std::string& token : sentence.tokens) ++table[token];
  }
  return table;
}

BpeModel learn_bpe(const WordFreqTable& words, size_t num_merges) {
  return run_learner(words, StopMode::kMergeCount, num_merges).model;
}

BpeModel learn_bpe(const Corpus& corpus, size_t num_merges) {
  return learn_bpe(word_frequencies(corpus), num_merges);
}

MatchResult match_merges(const WordFreqTable& words, size_t target_vocab) {
  MatchResult result;
  result.target_vocab = target_vocab;
  LearnOutcome outcome =
      run_learner(words, StopMode::kTargetVocab, target_vocab);
  if (target_vocab < outcome.model.alphabet.size()) {
    // The alphabet alone already exceeds the request; no merge can shrink
    // it, so the model stays merge-free.
    result.target_below_alphabet = true;
  }
  result.model = std::move(outcome.model);
  result.achieved_vocab = outcome.distinct;
  result.exhausted = outcome.exhausted;
  return result;
}

MatchResult match_merges(const Corpus& corpus, size_t target_vocab) {
  return match_merges(word_frequencies(corpus), target_vocab);
}

BpeModel learn_joint(const Corpus& source, const Corpus& target,
                     size_t num_merges, const TransliterationTable* mapping,
                     double overlap_threshold) {
  Corpus mapped_target = mapping ? transliterate(target, *mapping) : target;
  if (!mapping) {
    auto va = vocabulary(source, VocabLevel::kChar);
    auto vb = vocabulary(mapped_target, VocabLevel::kChar);
    if (!va.empty() && !vb.empty()) {
      size_t shared = 0;
      for (const auto& [ch, freq] : va) {
        if (vb.count(ch)) ++shared;
      }
      double overlap = static_cast<double>(shared) /
                       static_cast<double>(std::min(va.size(), vb.size()));
      if (overlap < overlap_threshold) {
        std::ostringstream msg;
        msg << "joint learning refused: character vocabularies overlap by "
            << overlap << " (" << shared << " shared of " << va.size()
            << " source and " << vb.size()
            << " target characters); supply a transliteration mapping";
        throw Error(ErrorCode::kUnsupported, msg.str());
      }
    }
  }
  WordFreqTable combined = word_frequencies(source);
  for (const auto& [word, freq] : word_frequencies(mapped_target)) {
    combined[word] += freq;
  }
  return learn_bpe(combined, num_merges);
}

std::vector<std::string> apply_bpe(const BpeModel& model,
                                   std::string_view word) {
  std::vector<std::string> units;
  size_t pos = 0;
  char32_t cp;
  while (utf8::decode_next(word, pos, cp)) {
    std::string ch;
    utf8::append(ch, cp);
    units.push_back(std::move(ch));
  }
  if (units.size() < 2 || model.merges.empty()) return units;

  // Over-approximate filter: a rule can only fire if both sides have been
  // seen among the word's subwords at some point.
  std::unordered_set<std::string> present(units.begin(), units.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const MergeRule& rule : model.merges) {
      if (units.size() < 2) break;
      if (!present.count(rule.left) || !present.count(rule.right)) continue;
      size_t hit = units.size();
      for (size_t i = 0; i + 1 < units.size(); ++i) {
        if (units[i] == rule.left && units[i + 1] == rule.right) {
          hit = i;
          break;
        }
      }
      if (hit == units.size()) continue;
      std::vector<std::string> next;
      next.reserve(units.size() - 1);
      for (size_t i = 0; i < hit; ++i) next.push_back(std::move(units[i]));
      size_t i = hit;
      while (i < units.size()) {
        if (i + 1 < units.size() && units[i] == rule.left &&
            units[i + 1] == rule.right) {
          next.push_back(rule.product());
          i += 2;
        } else {
          next.push_back(std::move(units[i]));
          ++i;
        }
      }
      units = std::move(next);
      present.insert(rule.product());
      changed = true;
    }
  }
  return units;
}

std::string serialize_model(const BpeModel& model) {
  std::string out = "subseg-bpe 1 " + std::to_string(model.merges.size()) +
                    " " + std::to_string(model.alphabet.size()) + "\n";
  for (const std::string& ch : model.alphabet) {
    out += ch;
    out += '\n';
  }
  for (const MergeRule& rule : model.merges) {
    out += rule.left;
    out += '\t';
    out += rule.right;
    out += '\n';
  }
  return out;
}

void save_model(const BpeModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open for writing: " + path);
  out << serialize_model(model);
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "failed writing model file: " + path);
}

BpeModel parse_model(std::string_view text, const std::string& source_name) {
  auto fail = [&](size_t line_no, const std::string& what) -> void {
    throw Error(ErrorCode::kParse, source_name + ":" +
                                       std::to_string(line_no) + ": " + what);
  };
  auto lines = strings::split_lines(text);
  if (lines.empty()) fail(1, "empty model file");

  auto header = strings::split_ws(lines[0]);
  if (header.size() != 4 || header[0] != "subseg-bpe") {
    fail(1, "expected header 'subseg-bpe <version> <merges> <alphabet>'");
  }
  if (header[1] != "1") {
    fail(1, "unsupported model format version '" + std::string(header[1]) +
                "'");
  }
  size_t num_merges = 0;
  size_t alphabet_size = 0;
  try {
    num_merges = std::stoull(std::string(header[2]));
    alphabet_size = std::stoull(std::string(header[3]));
  } catch (const std::exception&) {
    fail(1, "malformed counts in header");
  }
  if (lines.size() != 1 + alphabet_size + num_merges) {
    fail(lines.size(),
         "expected " + std::to_string(1 + alphabet_size + num_merges) +
             " lines, found " + std::to_string(lines.size()));
  }

  BpeModel model;
  for (size_t i = 0; i < alphabet_size; ++i) {
    size_t line_no = 2 + i;
    std::string_view line = lines[1 + i];
    if (line.empty()) fail(line_no, "empty alphabet entry");
    if (utf8::length(line) != 1) {
      fail(line_no, "alphabet entry is not a single character: '" +
                        std::string(line) + "'");
    }
    if (!model.alphabet.insert(std::string(line)).second) {
      fail(line_no, "duplicate alphabet entry '" + std::string(line) + "'");
    }
  }

  std::set<std::string> units(model.alphabet.begin(), model.alphabet.end());
  std::set<std::pair<std::string, std::string>> seen;
  for (size_t i = 0; i < num_merges; ++i) {
    size_t line_no = 2 + alphabet_size + i;
    std::string_view line = lines[1 + alphabet_size + i];
    size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      fail(line_no, "expected 'left<TAB>right'");
    }
    MergeRule rule{std::string(line.substr(0, tab)),
                   std::string(line.substr(tab + 1))};
    if (!units.count(rule.left)) {
      fail(line_no, "rule references unknown subword '" + rule.left + "'");
    }
    if (!units.count(rule.right)) {
      fail(line_no, "rule references unknown subword '" + rule.right + "'");
    }
    if (!seen.insert({rule.left, rule.right}).second) {
      fail(line_no,
           "duplicate merge rule '" + rule.left + "' + '" + rule.right + "'");
    }
    units.insert(rule.product());
    model.merges.push_back(std::move(rule));
  }
  return model;
}

BpeModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open model file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str(), path);
}

}  // namespace subseg
