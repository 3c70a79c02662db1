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

#include "subseg/subseg.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <span>
#include <string>

#include "bpe.hpp"
#include "codec.hpp"
#include "corpus.hpp"
#include "error.hpp"
#include "eval.hpp"
#include "ortho.hpp"
#include "pipeline.hpp"
#include "simil.hpp"
#include "strings.hpp"
#include "translit.hpp"

struct subseg_corpus {
  subseg::Corpus impl;
};

struct subseg_bpe_model {
  subseg::BpeModel impl;
};

struct subseg_script {
  subseg::ScriptSpec impl;
};

struct subseg_translit {
  subseg::TransliterationTable impl;
};

namespace {

thread_local std::string g_last_error;

subseg_status set_error(subseg::ErrorCode code, const char* what) {
  g_last_error = what;
  return static_cast<subseg_status>(code);
}

template <typename F>
subseg_status wrap(F&& body) noexcept {
  try {
    body();
    return SUBSEG_OK;
  } catch (const subseg::Error& e) {
    return set_error(e.code(), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(subseg::ErrorCode::kInternal, "out of memory");
  } catch (const std::exception& e) {
    return set_error(subseg::ErrorCode::kInternal, e.what());
  } catch (...) {
    return set_error(subseg::ErrorCode::kInternal, "unknown error");
  }
}

subseg_status missing_arg(const char* what) {
  g_last_error = std::string(what) + " must not be NULL";
  return SUBSEG_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string_view marker_or_default(const char* marker) {
  return marker ? std::string_view(marker) : subseg::kDefaultMarker;
}

std::string join_units(const std::vector<std::string>& units) {
  std::string out;
  for (size_t i = 0; i < units.size(); ++i) {
    if (i) out += ' ';
    out += units[i];
  }
  return out;
}

void fill_stats(uint64_t stats[5], const subseg::TranslitStats& s) {
  if (!stats) return;
  stats[0] = s.offset_mapped;
  stats[1] = s.exceptions_applied;
  stats[2] = s.placeholders_emitted;
  stats[3] = s.unassigned_preserved;
  stats[4] = s.passed_through;
}

// Builds the segmenter named by scheme and hands it to the body.
template <typename F>
void with_segmenter(const char* scheme, const subseg_bpe_model* model,
                    const subseg_script* script, F&& body) {
  std::string name = scheme ? scheme : "";
  if (name == "char") {
    subseg::CharSegmenter segmenter;
    body(segmenter);
  } else if (name == "bpe") {
    if (!model) {
      throw subseg::Error(subseg::ErrorCode::kInvalidArgument,
                          "scheme 'bpe' needs a model");
    }
    subseg::BpeSegmenter segmenter(model->impl);
    body(segmenter);
  } else if (name == "os") {
    if (!script) {
      throw subseg::Error(subseg::ErrorCode::kInvalidArgument,
                          "scheme 'os' needs a script");
    }
    subseg::OrthoSegmenter segmenter(script->impl);
    body(segmenter);
  } else {
    throw subseg::Error(subseg::ErrorCode::kInvalidArgument,
                        "unknown scheme '" + name +
                            "' (expected char, os, or bpe)");
  }
}

}  // namespace

extern "C" {

const char* subseg_version(void) { return "0.1.0"; }

const char* subseg_last_error(void) { return g_last_error.c_str(); }

void subseg_string_free(char* s) { std::free(s); }

void subseg_doubles_free(double* values) { std::free(values); }

/* ---------------- corpus ---------------- */

subseg_status subseg_corpus_load(const char* path, int normalize_nfc,
                                 const char* marker, subseg_corpus** out) {
  if (!path) return missing_arg("path");
  if (!out) return missing_arg("out");
  return wrap([&] {
    auto norm = normalize_nfc ? subseg::Normalization::kNfc
                              : subseg::Normalization::kNone;
    auto corpus = subseg::Corpus::load_file(path, norm,
                                            marker ? marker : "");
    *out = new subseg_corpus{std::move(corpus)};
  });
}

subseg_status subseg_corpus_from_text(const char* text, int normalize_nfc,
                                      const char* marker,
                                      subseg_corpus** out) {
  if (!text) return missing_arg("text");
  if (!out) return missing_arg("out");
  return wrap([&] {
    auto norm = normalize_nfc ? subseg::Normalization::kNfc
                              : subseg::Normalization::kNone;
    auto corpus = subseg::Corpus::from_text(text, norm, marker ? marker : "");
    *out = new subseg_corpus{std::move(corpus)};
  });
}

void subseg_corpus_free(subseg_corpus* corpus) { delete corpus; }

size_t subseg_corpus_line_count(const subseg_corpus* corpus) {
  return corpus ? corpus->impl.line_count() : 0;
}

size_t subseg_corpus_token_count(const subseg_corpus* corpus) {
  return corpus ? corpus->impl.token_count() : 0;
}

subseg_status subseg_corpus_text(const subseg_corpus* corpus,
                                 char** out_text) {
  if (!corpus) return missing_arg("corpus");
  if (!out_text) return missing_arg("out_text");
  return wrap([&] { *out_text = dup_string(corpus->impl.to_text()); });
}

subseg_status subseg_corpus_write(const subseg_corpus* corpus,
                                  const char* path) {
  if (!corpus) return missing_arg("corpus");
  if (!path) return missing_arg("path");
  return wrap([&] { corpus->impl.write_file(path); });
}

subseg_status subseg_corpus_vocab(const subseg_corpus* corpus, int char_level,
                                  char** out_tsv) {
  if (!corpus) return missing_arg("corpus");
  if (!out_tsv) return missing_arg("out_tsv");
  return wrap([&] {
    auto level =
        char_level ? subseg::VocabLevel::kChar : subseg::VocabLevel::kWord;
    auto counts = subseg::vocabulary(corpus->impl, level);
    *out_tsv = dup_string(
        subseg::format_vocab_tsv(counts, char_level ? "char" : "word"));
  });
}

/* ---------------- bpe ---------------- */

subseg_status subseg_bpe_learn(const subseg_corpus* corpus, size_t num_merges,
                               subseg_bpe_model** out) {
  if (!corpus) return missing_arg("corpus");
  if (!out) return missing_arg("out");
  return wrap([&] {
    *out = new subseg_bpe_model{subseg::learn_bpe(corpus->impl, num_merges)};
  });
}

subseg_status subseg_bpe_match_merges(const subseg_corpus* corpus,
                                      size_t target_vocab,
                                      subseg_bpe_model** out, size_t* achieved,
                                      int* below_alphabet, int* exhausted) {
  if (!corpus) return missing_arg("corpus");
  if (!out) return missing_arg("out");
  return wrap([&] {
    subseg::MatchResult result =
        subseg::match_merges(corpus->impl, target_vocab);
    if (achieved) *achieved = result.achieved_vocab;
    if (below_alphabet) *below_alphabet = result.target_below_alphabet ? 1 : 0;
    if (exhausted) *exhausted = result.exhausted ? 1 : 0;
    *out = new subseg_bpe_model{std::move(result.model)};
  });
}

subseg_status subseg_bpe_learn_joint(const subseg_corpus* source,
                                     const subseg_corpus* target,
                                     size_t num_merges,
                                     const subseg_translit* mapping,
                                     double overlap_threshold,
                                     subseg_bpe_model** out) {
  if (!source) return missing_arg("source");
  if (!target) return missing_arg("target");
  if (!out) return missing_arg("out");
  return wrap([&] {
    *out = new subseg_bpe_model{
        subseg::learn_joint(source->impl, target->impl, num_merges,
                            mapping ? &mapping->impl : nullptr,
                            overlap_threshold)};
  });
}

subseg_status subseg_bpe_load(const char* path, subseg_bpe_model** out) {
  if (!path) return missing_arg("path");
  if (!out) return missing_arg("out");
  return wrap(
      [&] { *out = new subseg_bpe_model{subseg::load_model(path)}; });
}

subseg_status subseg_bpe_save(const subseg_bpe_model* model,
                              const char* path) {
  if (!model) return missing_arg("model");
  if (!path) return missing_arg("path");
  return wrap([&] { subseg::save_model(model->impl, path); });
}

size_t subseg_bpe_num_merges(const subseg_bpe_model* model) {
  return model ? model->impl.merges.size() : 0;
}

size_t subseg_bpe_alphabet_size(const subseg_bpe_model* model) {
  return model ? model->impl.alphabet.size() : 0;
}

subseg_status subseg_bpe_apply_word(const subseg_bpe_model* model,
                                    const char* word, char** out_line) {
  if (!model) return missing_arg("model");
  if (!word) return missing_arg("word");
  if (!out_line) return missing_arg("out_line");
  return wrap([&] {
    *out_line = dup_string(join_units(subseg::apply_bpe(model->impl, word)));
  });
}

void subseg_bpe_free(subseg_bpe_model* model) { delete model; }

/* ---------------- scripts ---------------- */

subseg_status subseg_script_builtin(const char* name, subseg_script** out) {
  if (!name) return missing_arg("name");
  if (!out) return missing_arg("out");
  return wrap(
      [&] { *out = new subseg_script{subseg::builtin_script(name)}; });
}

subseg_status subseg_script_load(const char* path, subseg_script** out) {
  if (!path) return missing_arg("path");
  if (!out) return missing_arg("out");
  return wrap(
      [&] { *out = new subseg_script{subseg::load_script_spec(path)}; });
}

subseg_status subseg_script_resolve(const char* name_or_path,
                                    subseg_script** out) {
  if (!name_or_path) return missing_arg("name_or_path");
  if (!out) return missing_arg("out");
  return wrap(
      [&] { *out = new subseg_script{subseg::resolve_script(name_or_path)}; });
}

subseg_status subseg_script_builtin_names(char** out_names) {
  if (!out_names) return missing_arg("out_names");
  return wrap([&] {
    std::string joined;
    for (const std::string& name : subseg::builtin_script_names()) {
      if (!joined.empty()) joined += '\n';
      joined += name;
    }
    *out_names = dup_string(joined);
  });
}

subseg_status subseg_script_dump(const char* name, char** out_text) {
  if (!name) return missing_arg("name");
  if (!out_text) return missing_arg("out_text");
  return wrap(
      [&] { *out_text = dup_string(subseg::builtin_script_text(name)); });
}

void subseg_script_free(subseg_script* script) { delete script; }

subseg_status subseg_syllabify_word(const subseg_script* script,
                                    const char* word, char** out_line) {
  if (!script) return missing_arg("script");
  if (!word) return missing_arg("word");
  if (!out_line) return missing_arg("out_line");
  return wrap([&] {
    *out_line = dup_string(join_units(subseg::syllabify(word, script->impl)));
  });
}

subseg_status subseg_syllabify_line(const subseg_script* script,
                                    const char* line, char** out_line) {
  if (!script) return missing_arg("script");
  if (!line) return missing_arg("line");
  if (!out_line) return missing_arg("out_line");
  return wrap([&] {
    subseg::Corpus one =
        subseg::Corpus::from_text(line, subseg::Normalization::kNone, "");
    std::string joined;
    if (one.line_count() > 0) {
      for (const std::string& token : one.sentences()[0].tokens) {
        for (const std::string& unit :
             subseg::syllabify(token, script->impl)) {
          if (!joined.empty()) joined += ' ';
          joined += unit;
        }
      }
    }
    *out_line = dup_string(joined);
  });
}

/* ---------------- segmentation ---------------- */

subseg_status subseg_segment_corpus(const subseg_corpus* corpus,
                                    const char* scheme,
                                    const subseg_bpe_model* model,
                                    const subseg_script* script,
                                    const char* marker, subseg_corpus** out) {
  if (!corpus) return missing_arg("corpus");
  if (!out) return missing_arg("out");
  return wrap([&] {
    with_segmenter(scheme, model, script, [&](const subseg::WordSegmenter& s) {
      *out = new subseg_corpus{
          subseg::segment_corpus(corpus->impl, s, marker_or_default(marker))};
    });
  });
}

subseg_status subseg_segment_line(const char* line, const char* scheme,
                                  const subseg_bpe_model* model,
                                  const subseg_script* script,
                                  const char* marker, char** out_line) {
  if (!line) return missing_arg("line");
  if (!out_line) return missing_arg("out_line");
  return wrap([&] {
    std::string_view use_marker = marker_or_default(marker);
    subseg::Corpus one = subseg::Corpus::from_text(
        line, subseg::Normalization::kNone, use_marker);
    with_segmenter(scheme, model, script, [&](const subseg::WordSegmenter& s) {
      std::string joined;
      if (one.line_count() > 0) {
        joined =
            subseg::segment(one.sentences()[0], s, use_marker).joined();
      }
      *out_line = dup_string(joined);
    });
  });
}

subseg_status subseg_desegment_corpus(const subseg_corpus* corpus,
                                      const char* marker,
                                      subseg_corpus** out) {
  if (!corpus) return missing_arg("corpus");
  if (!out) return missing_arg("out");
  return wrap([&] {
    *out = new subseg_corpus{
        subseg::desegment_corpus(corpus->impl, marker_or_default(marker))};
  });
}

subseg_status subseg_desegment_line(const char* line, const char* marker,
                                    char** out_line) {
  if (!line) return missing_arg("line");
  if (!out_line) return missing_arg("out_line");
  return wrap([&] {
    subseg::Corpus one =
        subseg::Corpus::from_text(line, subseg::Normalization::kNone, "");
    std::string joined;
    if (one.line_count() > 0) {
      subseg::SegmentedText text;
      text.units = one.sentences()[0].tokens;
      joined = subseg::desegment(text, marker_or_default(marker)).joined();
    }
    *out_line = dup_string(joined);
  });
}

/* ---------------- transliteration ---------------- */

subseg_status subseg_translit_builtin(const char* from, const char* to,
                                      subseg_translit** out) {
  if (!from) return missing_arg("from");
  if (!to) return missing_arg("to");
  if (!out) return missing_arg("out");
  return wrap([&] {
    *out = new subseg_translit{subseg::builtin_translit_table(from, to)};
  });
}

subseg_status subseg_translit_add_exceptions(subseg_translit* table,
                                             const char* path) {
  if (!table) return missing_arg("table");
  if (!path) return missing_arg("path");
  return wrap([&] { subseg::load_exceptions_file(table->impl, path); });
}

void subseg_translit_free(subseg_translit* table) { delete table; }

subseg_status subseg_translit_text(const subseg_translit* table,
                                   const char* text, char** out_text,
                                   uint64_t stats[5]) {
  if (!table) return missing_arg("table");
  if (!text) return missing_arg("text");
  if (!out_text) return missing_arg("out_text");
  return wrap([&] {
    subseg::TranslitStats s;
    *out_text = dup_string(subseg::transliterate(text, table->impl, &s));
    fill_stats(stats, s);
  });
}

subseg_status subseg_translit_corpus(const subseg_translit* table,
                                     const subseg_corpus* corpus,
                                     subseg_corpus** out, uint64_t stats[5]) {
  if (!table) return missing_arg("table");
  if (!corpus) return missing_arg("corpus");
  if (!out) return missing_arg("out");
  return wrap([&] {
    subseg::TranslitStats s;
    *out = new subseg_corpus{
        subseg::transliterate(corpus->impl, table->impl, &s)};
    fill_stats(stats, s);
  });
}

subseg_status subseg_translit_mappable_fraction(const subseg_translit* table,
                                                const subseg_corpus* corpus,
                                                double* out_fraction) {
  if (!table) return missing_arg("table");
  if (!corpus) return missing_arg("corpus");
  if (!out_fraction) return missing_arg("out_fraction");
  return wrap([&] {
    *out_fraction = subseg::mappable_fraction(corpus->impl, table->impl);
  });
}

/* ---------------- similarity ---------------- */

subseg_status subseg_lcsr(const char* a, const char* b, double* out) {
  if (!a) return missing_arg("a");
  if (!b) return missing_arg("b");
  if (!out) return missing_arg("out");
  return wrap([&] { *out = subseg::lcsr(a, b); });
}

subseg_status subseg_corpus_lcsr(const subseg_corpus* source,
                                 const subseg_corpus* target,
                                 const subseg_translit* mapping,
                                 double** out_values, size_t* out_count,
                                 double* mean, size_t* compared,
                                 size_t* skipped, size_t* truncated) {
  if (!source) return missing_arg("source");
  if (!target) return missing_arg("target");
  if (!out_values) return missing_arg("out_values");
  if (!out_count) return missing_arg("out_count");
  return wrap([&] {
    subseg::ParallelCorpus pair{source->impl, target->impl};
    subseg::SimilarityReport report =
        subseg::corpus_lcsr(pair, mapping ? &mapping->impl : nullptr);
    size_t lines = source->impl.line_count();
    double* values = static_cast<double*>(std::malloc(
        sizeof(double) * (lines ? lines : 1)));
    if (!values) throw std::bad_alloc();
    for (size_t i = 0; i < lines; ++i) {
      values[i] = std::nan("");
    }
    for (size_t k = 0; k < report.per_sentence.size(); ++k) {
      values[report.sentence_indices[k]] = report.per_sentence[k];
    }
    *out_values = values;
    *out_count = lines;
    if (mean) *mean = report.has_mean() ? report.corpus_mean : std::nan("");
    if (compared) *compared = report.compared;
    if (skipped) *skipped = report.skipped;
    if (truncated) *truncated = report.truncated;
  });
}

subseg_status subseg_pearson(const double* xs, const double* ys, size_t n,
                             double* out_r) {
  if (!xs) return missing_arg("xs");
  if (!ys) return missing_arg("ys");
  if (!out_r) return missing_arg("out_r");
  return wrap([&] {
    *out_r = subseg::pearson(std::span<const double>(xs, n),
                             std::span<const double>(ys, n));
  });
}

subseg_status subseg_correlate(const subseg_corpus* source,
                               const subseg_corpus* reference,
                               const subseg_corpus* hypothesis, double* out_r,
                               size_t* out_points) {
  if (!source) return missing_arg("source");
  if (!reference) return missing_arg("reference");
  if (!hypothesis) return missing_arg("hypothesis");
  if (!out_r) return missing_arg("out_r");
  return wrap([&] {
    subseg::CorrelationReport report = subseg::correlate_similarity_accuracy(
        source->impl, reference->impl, hypothesis->impl);
    *out_r = report.r;
    if (out_points) *out_points = report.points;
  });
}

/* ---------------- evaluation ---------------- */

subseg_status subseg_bleu(const subseg_corpus* hypotheses,
                          const subseg_corpus* references, int max_n, int soft,
                          double threshold, double* out_score,
                          double* precisions, double* brevity_penalty,
                          uint64_t* hyp_len, uint64_t* ref_len) {
  if (!hypotheses) return missing_arg("hypotheses");
  if (!references) return missing_arg("references");
  if (!out_score) return missing_arg("out_score");
  return wrap([&] {
    subseg::EvalReport report =
        soft ? subseg::soft_bleu(hypotheses->impl, references->impl, max_n,
                                 threshold)
             : subseg::bleu(hypotheses->impl, references->impl, max_n);
    *out_score = report.score;
    if (precisions) {
      for (int n = 0; n < max_n; ++n) precisions[n] = report.precisions[n];
    }
    if (brevity_penalty) *brevity_penalty = report.brevity_penalty;
    if (hyp_len) *hyp_len = report.hyp_length;
    if (ref_len) *ref_len = report.ref_length;
  });
}

subseg_status subseg_bootstrap(const subseg_corpus* system_a,
                               const subseg_corpus* system_b,
                               const subseg_corpus* references, int max_n,
                               int soft, double threshold,
                               uint64_t num_samples, uint64_t seed,
                               double* out_p_value, double* score_a,
                               double* score_b, double* mean_delta,
                               uint64_t* opposing) {
  if (!system_a) return missing_arg("system_a");
  if (!system_b) return missing_arg("system_b");
  if (!references) return missing_arg("references");
  if (!out_p_value) return missing_arg("out_p_value");
  return wrap([&] {
    subseg::SignificanceResult result = subseg::bootstrap_test(
        system_a->impl, system_b->impl, references->impl,
        soft ? subseg::Metric::kSoftBleu : subseg::Metric::kBleu, num_samples,
        seed, max_n, threshold);
    *out_p_value = result.p_value;
    if (score_a) *score_a = result.score_a;
    if (score_b) *score_b = result.score_b;
    if (mean_delta) *mean_delta = result.mean_delta;
    if (opposing) *opposing = result.opposing;
  });
}

/* ---------------- pipeline ---------------- */

subseg_status subseg_pipeline_run_file(const char* config_path,
                                       char** out_manifest_json) {
  if (!config_path) return missing_arg("config_path");
  if (!out_manifest_json) return missing_arg("out_manifest_json");
  return wrap([&] {
    subseg::PipelineConfig config =
        subseg::PipelineConfig::parse_file(config_path);
    subseg::PipelineResult result = subseg::run_pipeline(config);
    *out_manifest_json = dup_string(result.manifest_json);
  });
}

subseg_status subseg_pipeline_run_text(const char* config_text,
                                       char** out_manifest_json) {
  if (!config_text) return missing_arg("config_text");
  if (!out_manifest_json) return missing_arg("out_manifest_json");
  return wrap([&] {
    subseg::PipelineConfig config =
        subseg::PipelineConfig::parse_text(config_text, "<config>");
    subseg::PipelineResult result = subseg::run_pipeline(config);
    *out_manifest_json = dup_string(result.manifest_json);
  });
}

subseg_status subseg_sweep(const char* config_dir, const char* output_tsv,
                           const char* ref_path, const char* hyp_dir,
                           char** out_tsv) {
  if (!config_dir) return missing_arg("config_dir");
  return wrap([&] {
    subseg::SweepOptions options;
    options.config_dir = config_dir;
    options.output_path = output_tsv ? output_tsv : "";
    options.ref_path = ref_path ? ref_path : "";
    options.hyp_dir = hyp_dir ? hyp_dir : "";
    std::string tsv = subseg::run_sweep(options);
    if (out_tsv) *out_tsv = dup_string(tsv);
  });
}

}  // extern "C"
