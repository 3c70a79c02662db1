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

#include "eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "error.hpp"
#include "utf8.hpp"

namespace subseg {

size_t edit_distance(std::u32string_view a, std::u32string_view b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  if (b.size() > a.size()) std::swap(a, b);
  std::vector<size_t> prev(b.size() + 1);
  std::vector<size_t> curr(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    curr[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, sub});
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<char32_t> ua = utf8::decode(a);
  std::vector<char32_t> ub = utf8::decode(b);
  return edit_distance(std::u32string_view(ua.data(), ua.size()),
                       std::u32string_view(ub.data(), ub.size()));
}

namespace {

using GramKey = std::vector<std::string_view>;

struct SentenceStats {
  std::vector<double> correct;
  std::vector<uint64_t> total;
  uint64_t hyp_len = 0;
  uint64_t ref_len = 0;
};

GramKey gram_at(const std::vector<std::string>& tokens, size_t pos, int n) {
  GramKey key;
  key.reserve(n);
  for (int k = 0; k < n; ++k) key.emplace_back(tokens[pos + k]);
  return key;
}

std::u32string gram_chars(const GramKey& key) {
  std::string joined;
  for (size_t i = 0; i < key.size(); ++i) {
    if (i) joined += ' ';
    joined += key[i];
  }
  std::vector<char32_t> cps = utf8::decode(joined);
  return std::u32string(cps.begin(), cps.end());
}

SentenceStats hard_stats(const Sentence& hyp, const Sentence& ref, int max_n) {
  SentenceStats st;
  st.hyp_len = hyp.tokens.size();
  st.ref_len = ref.tokens.size();
  st.correct.assign(max_n, 0.0);
  st.total.assign(max_n, 0);
  for (int n = 1; n <= max_n; ++n) {
    if (hyp.tokens.size() < static_cast<size_t>(n)) break;
    size_t slots = hyp.tokens.size() - n + 1;
    st.total[n - 1] = slots;
    if (ref.tokens.size() < static_cast<size_t>(n)) continue;
    std::map<GramKey, uint64_t> ref_counts;
    for (size_t p = 0; p + n <= ref.tokens.size(); ++p) {
      ++ref_counts[gram_at(ref.tokens, p, n)];
    }
    std::map<GramKey, uint64_t> hyp_counts;
    for (size_t p = 0; p + n <= hyp.tokens.size(); ++p) {
      ++hyp_counts[gram_at(hyp.tokens, p, n)];
    }
    double matched = 0.0;
    for (const auto& [gram, count] : hyp_counts) {
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) {
        matched += static_cast<double>(std::min(count, it->second));
      }
    }
    st.correct[n - 1] = matched;
  }
  return st;
}

// One reference n-gram type: pooled capacity across its occurrences, with
// the position of its first occurrence as the deterministic tiebreak.
struct RefType {
  std::u32string chars;
  double capacity = 0.0;
  size_t first_pos = 0;
};

SentenceStats soft_stats(const Sentence& hyp, const Sentence& ref, int max_n,
                         double threshold) {
  SentenceStats st;
  st.hyp_len = hyp.tokens.size();
  st.ref_len = ref.tokens.size();
  st.correct.assign(max_n, 0.0);
  st.total.assign(max_n, 0);
  for (int n = 1; n <= max_n; ++n) {
    if (hyp.tokens.size() < static_cast<size_t>(n)) break;
    size_t slots = hyp.tokens.size() - n + 1;
    st.total[n - 1] = slots;
    if (ref.tokens.size() < static_cast<size_t>(n)) continue;

    std::map<GramKey, size_t> ref_index;
    std::vector<RefType> ref_types;
    for (size_t p = 0; p + n <= ref.tokens.size(); ++p) {
      GramKey key = gram_at(ref.tokens, p, n);
      auto [it, inserted] = ref_index.try_emplace(key, ref_types.size());
      if (inserted) {
        ref_types.push_back(RefType{gram_chars(key), 0.0, p});
      }
      ref_types[it->second].capacity += 1.0;
    }

    // Similarities are cached per hypothesis n-gram type; identical
    // hypothesis n-grams still consume capacity occurrence by occurrence.
    std::map<GramKey, size_t> hyp_index;
    std::vector<std::vector<double>> sim_cache;
    std::vector<std::u32string> hyp_chars;
    std::vector<long> exact_ref;  // ref type with identical tokens, or -1

    double credit_sum = 0.0;
    for (size_t p = 0; p + n <= hyp.tokens.size(); ++p) {
      GramKey key = gram_at(hyp.tokens, p, n);
      auto [it, inserted] = hyp_index.try_emplace(key, sim_cache.size());
      size_t h = it->second;
      if (inserted) {
        hyp_chars.push_back(gram_chars(key));
        auto exact = ref_index.find(key);
        exact_ref.push_back(exact == ref_index.end()
                                ? -1
                                : static_cast<long>(exact->second));
        std::vector<double> sims(ref_types.size(), 0.0);
        const std::u32string& hc = hyp_chars[h];
        for (size_t t = 0; t < ref_types.size(); ++t) {
          const std::u32string& rc = ref_types[t].chars;
          size_t longest = std::max(hc.size(), rc.size());
          size_t gap = hc.size() > rc.size() ? hc.size() - rc.size()
                                             : rc.size() - hc.size();
          // The length gap alone already bounds the similarity.
          if (longest == 0 ||
              1.0 - static_cast<double>(gap) / static_cast<double>(longest) <
                  threshold) {
            continue;
          }
          double sim = 1.0 - static_cast<double>(edit_distance(hc, rc)) /
                                 static_cast<double>(longest);
          if (sim >= threshold) sims[t] = sim;
        }
        sim_cache.push_back(std::move(sims));
      }

      // Exact type first (its similarity 1.0 is the unique maximum), then
      // highest similarity, then earliest first occurrence.
      long chosen = -1;
      double chosen_sim = 0.0;
      if (exact_ref[h] >= 0 && ref_types[exact_ref[h]].capacity > 0.0) {
        chosen = exact_ref[h];
        chosen_sim = 1.0;
      } else {
        const std::vector<double>& sims = sim_cache[h];
        for (size_t t = 0; t < ref_types.size(); ++t) {
          if (sims[t] <= 0.0 || ref_types[t].capacity <= 0.0) continue;
          if (chosen < 0 || sims[t] > chosen_sim ||
              (sims[t] == chosen_sim &&
               ref_types[t].first_pos < ref_types[chosen].first_pos)) {
            chosen = static_cast<long>(t);
            chosen_sim = sims[t];
          }
        }
      }
      if (chosen >= 0) {
        double credit = std::min(chosen_sim, ref_types[chosen].capacity);
        ref_types[chosen].capacity -= credit;
        credit_sum += credit;
      }
    }
    st.correct[n - 1] = credit_sum;
  }
  return st;
}

EvalReport score_from_sums(const std::vector<double>& correct,
                           const std::vector<uint64_t>& total,
                           uint64_t hyp_len, uint64_t ref_len, int max_n) {
  EvalReport report;
  report.hyp_length = hyp_len;
  report.ref_length = ref_len;
  report.precisions.assign(max_n, 0.0);
  bool any_zero = false;
  double log_sum = 0.0;
  for (int n = 0; n < max_n; ++n) {
    double p = total[n] > 0
                   ? correct[n] / static_cast<double>(total[n])
                   : 0.0;
    report.precisions[n] = p;
    if (p <= 0.0) {
      any_zero = true;
    } else {
      log_sum += std::log(p);
    }
  }
  if (hyp_len == 0 || hyp_len >= ref_len) {
    report.brevity_penalty = 1.0;
  } else {
    report.brevity_penalty = std::exp(
        1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len));
  }
  report.score = any_zero ? 0.0
                          : report.brevity_penalty *
                                std::exp(log_sum / static_cast<double>(max_n));
  return report;
}

std::vector<SentenceStats> corpus_stats(const Corpus& hyps, const Corpus& refs,
                                        Metric metric, int max_n,
                                        double threshold) {
  if (hyps.line_count() != refs.line_count()) {
    throw Error(ErrorCode::kAlignment,
                "hypothesis and reference line counts differ: " +
                    std::to_string(hyps.line_count()) + " vs " +
                    std::to_string(refs.line_count()));
  }
  if (hyps.line_count() == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot evaluate an empty corpus");
  }
  if (max_n < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "max n-gram order must be at least 1, got " +
                    std::to_string(max_n));
  }
  std::vector<SentenceStats> stats;
  stats.reserve(hyps.line_count());
  for (size_t i = 0; i < hyps.line_count(); ++i) {
    const Sentence& hyp = hyps.sentences()[i];
    const Sentence& ref = refs.sentences()[i];
    stats.push_back(metric == Metric::kBleu
                        ? hard_stats(hyp, ref, max_n)
                        : soft_stats(hyp, ref, max_n, threshold));
  }
  return stats;
}

EvalReport score_stats(const std::vector<SentenceStats>& stats, int max_n) {
  std::vector<double> correct(max_n, 0.0);
  std::vector<uint64_t> total(max_n, 0);
  uint64_t hyp_len = 0;
  uint64_t ref_len = 0;
  for (const SentenceStats& st : stats) {
    for (int n = 0; n < max_n; ++n) {
      correct[n] += st.correct[n];
      total[n] += st.total[n];
    }
    hyp_len += st.hyp_len;
    ref_len += st.ref_len;
  }
  return score_from_sums(correct, total, hyp_len, ref_len, max_n);
}

// Fixed-constant mixing so the bootstrap draws the same indices on every
// platform; standard library distributions are implementation-defined.
uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

struct SplitMix64 {
  uint64_t state;

  uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    return mix64(state);
  }
};

uint64_t bounded(SplitMix64& rng, uint64_t n) {
  uint64_t threshold = (0 - n) % n;
  while (true) {
    uint64_t r = rng.next();
    if (r >= threshold) return r % n;
  }
}

}  // namespace

EvalReport bleu(const Corpus& hypotheses, const Corpus& references,
                int max_n) {
  return score_stats(
      corpus_stats(hypotheses, references, Metric::kBleu, max_n, 0.0), max_n);
}

EvalReport soft_bleu(const Corpus& hypotheses, const Corpus& references,
                     int max_n, double threshold) {
  return score_stats(corpus_stats(hypotheses, references, Metric::kSoftBleu,
                                  max_n, threshold),
                     max_n);
}

SignificanceResult bootstrap_test(const Corpus& system_a,
                                  const Corpus& system_b,
                                  const Corpus& references, Metric metric,
                                  uint64_t num_samples, uint64_t seed,
                                  int max_n, double threshold) {
  if (num_samples < kMinBootstrapSamples) {
    throw Error(ErrorCode::kInvalidArgument,
                "bootstrap needs at least " +
                    std::to_string(kMinBootstrapSamples) + " samples, got " +
                    std::to_string(num_samples));
  }
  std::vector<SentenceStats> stats_a =
      corpus_stats(system_a, references, metric, max_n, threshold);
  std::vector<SentenceStats> stats_b =
      corpus_stats(system_b, references, metric, max_n, threshold);

  SignificanceResult result;
  result.num_samples = num_samples;
  result.score_a = score_stats(stats_a, max_n).score;
  result.score_b = score_stats(stats_b, max_n).score;
  result.full_delta = result.score_a - result.score_b;

  const size_t n = stats_a.size();
  std::vector<double> correct_a(max_n), correct_b(max_n);
  std::vector<uint64_t> total_a(max_n), total_b(max_n);
  double delta_sum = 0.0;
  for (uint64_t k = 0; k < num_samples; ++k) {
    SplitMix64 rng{mix64(seed ^ mix64(k + 0x9E3779B97F4A7C15ULL))};
    std::fill(correct_a.begin(), correct_a.end(), 0.0);
    std::fill(correct_b.begin(), correct_b.end(), 0.0);
    std::fill(total_a.begin(), total_a.end(), 0);
    std::fill(total_b.begin(), total_b.end(), 0);
    uint64_t hyp_a = 0, ref_a = 0, hyp_b = 0, ref_b = 0;
    for (size_t draw = 0; draw < n; ++draw) {
      size_t i = static_cast<size_t>(bounded(rng, n));
      const SentenceStats& sa = stats_a[i];
      const SentenceStats& sb = stats_b[i];
      for (int m = 0; m < max_n; ++m) {
        correct_a[m] += sa.correct[m];
        total_a[m] += sa.total[m];
        correct_b[m] += sb.correct[m];
        total_b[m] += sb.total[m];
      }
      hyp_a += sa.hyp_len;
      ref_a += sa.ref_len;
      hyp_b += sb.hyp_len;
      ref_b += sb.ref_len;
    }
    double delta =
        score_from_sums(correct_a, total_a, hyp_a, ref_a, max_n).score -
        score_from_sums(correct_b, total_b, hyp_b, ref_b, max_n).score;
    delta_sum += delta;
    if ((result.full_delta > 0.0 && delta < 0.0) ||
        (result.full_delta < 0.0 && delta > 0.0)) {
      ++result.opposing;
    }
  }
  result.mean_delta = delta_sum / static_cast<double>(num_samples);
  result.p_value = result.full_delta == 0.0
                       ? 1.0
                       : static_cast<double>(result.opposing) /
                             static_cast<double>(num_samples);
  return result;
}

}  // namespace subseg
