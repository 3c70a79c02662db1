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

// Command line front end. Everything goes through the public C interface;
// the binary holds no segmentation logic of its own.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subseg/subseg.h"

namespace {

[[noreturn]] void fail(subseg_status status, const std::string& context) {
  std::cerr << "subseg: " << context << ": " << subseg_last_error() << "\n";
  std::exit(static_cast<int>(status));
}

void check(subseg_status status, const std::string& context) {
  if (status != SUBSEG_OK) fail(status, context);
}

[[noreturn]] void usage_error(const std::string& message) {
  std::cerr << "subseg: " << message << "\n";
  std::exit(static_cast<int>(SUBSEG_ERR_INVALID_ARGUMENT));
}

struct CorpusHandle {
  subseg_corpus* h = nullptr;
  ~CorpusHandle() { subseg_corpus_free(h); }
};

struct ModelHandle {
  subseg_bpe_model* h = nullptr;
  ~ModelHandle() { subseg_bpe_free(h); }
};

struct ScriptHandle {
  subseg_script* h = nullptr;
  ~ScriptHandle() { subseg_script_free(h); }
};

struct TranslitHandle {
  subseg_translit* h = nullptr;
  ~TranslitHandle() { subseg_translit_free(h); }
};

struct StringOut {
  char* s = nullptr;
  ~StringOut() { subseg_string_free(s); }
};

struct DoublesOut {
  double* values = nullptr;
  ~DoublesOut() { subseg_doubles_free(values); }
};

std::string read_stdin() {
  std::ostringstream buffer;
  buffer << std::cin.rdbuf();
  return buffer.str();
}

// path "-" reads standard input. An empty marker disables the
// reserved-token check, for files that legitimately contain the marker.
void load_corpus(CorpusHandle& corpus, const std::string& path, bool nfc,
                 const std::string& marker) {
  subseg_status status;
  if (path == "-") {
    std::string text = read_stdin();
    status = subseg_corpus_from_text(text.c_str(), nfc ? 1 : 0,
                                     marker.c_str(), &corpus.h);
  } else {
    status = subseg_corpus_load(path.c_str(), nfc ? 1 : 0, marker.c_str(),
                                &corpus.h);
  }
  check(status, "loading " + (path == "-" ? std::string("stdin") : path));
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) usage_error("cannot write " + path);
  out << text;
  out.flush();
  if (!out) usage_error("failed writing " + path);
}

void write_corpus(const CorpusHandle& corpus, const std::string& path) {
  if (path == "-") {
    StringOut text;
    check(subseg_corpus_text(corpus.h, &text.s), "rendering output");
    std::cout << text.s;
    return;
  }
  check(subseg_corpus_write(corpus.h, path.c_str()), "writing " + path);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

// "from:to", both sides builtin script names.
void make_mapping(TranslitHandle& table, const std::string& spec,
                  const std::string& exceptions_path) {
  size_t colon = spec.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size()) {
    usage_error("--translit-map expects from:to, got '" + spec + "'");
  }
  std::string from = spec.substr(0, colon);
  std::string to = spec.substr(colon + 1);
  check(subseg_translit_builtin(from.c_str(), to.c_str(), &table.h),
        "building transliteration " + spec);
  if (!exceptions_path.empty()) {
    check(subseg_translit_add_exceptions(table.h, exceptions_path.c_str()),
          "loading exceptions " + exceptions_path);
  }
}

std::string format_score(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subseg: subword segmentation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", subseg_version());

  // ---- learn ----
  auto* learn = app.add_subcommand("learn", "Learn a BPE merge model");
  std::string learn_input, learn_input2, learn_output;
  size_t learn_merges = 0, learn_target = 0;
  std::string learn_map, learn_exceptions, learn_marker = "_";
  double learn_overlap = 0.1;
  bool learn_no_nfc = false;
  learn->add_option("--input", learn_input, "Training text, - for stdin")
      ->required();
  learn->add_option("--output", learn_output, "Model file to write")
      ->required();
  auto* merges_opt =
      learn->add_option("--merges", learn_merges, "Number of merges to learn");
  auto* target_opt = learn->add_option(
      "--target-vocab", learn_target,
      "Learn until the segmented text first reaches this many distinct "
      "subwords");
  merges_opt->excludes(target_opt);
  target_opt->excludes(merges_opt);
  auto* input2_opt = learn->add_option(
      "--input2", learn_input2, "Second corpus for a joint model");
  learn->add_option("--translit-map", learn_map,
                    "from:to scripts for mapping the second corpus");
  learn->add_option("--exceptions", learn_exceptions,
                    "Transliteration exceptions file");
  learn->add_option("--overlap-threshold", learn_overlap,
                    "Minimum character-vocabulary overlap for an unmapped "
                    "joint model");
  learn->add_option("--marker", learn_marker,
                    "Boundary marker the input must not contain");
  learn->add_flag("--no-nfc", learn_no_nfc, "Skip NFC normalization on load");

  // ---- segment ----
  auto* segment = app.add_subcommand("segment", "Segment text into subwords");
  std::string seg_input = "-", seg_output = "-", seg_scheme = "bpe";
  std::string seg_model, seg_script, seg_marker = "_";
  bool seg_no_nfc = false;
  segment->add_option("--input", seg_input, "Text to segment, - for stdin");
  segment->add_option("--output", seg_output, "Where to write, - for stdout");
  segment->add_option("--scheme", seg_scheme, "bpe, os, or char")
      ->check(CLI::IsMember({"bpe", "os", "char"}));
  segment->add_option("--model", seg_model, "BPE model file (scheme bpe)");
  segment->add_option("--script", seg_script,
                      "Script name or spec file (scheme os)");
  segment->add_option("--marker", seg_marker, "Boundary marker token");
  segment->add_flag("--no-nfc", seg_no_nfc, "Skip NFC normalization on load");

  // ---- desegment ----
  auto* desegment =
      app.add_subcommand("desegment", "Restore words from segmented text");
  std::string deseg_input = "-", deseg_output = "-", deseg_marker = "_";
  desegment->add_option("--input", deseg_input,
                        "Segmented text, - for stdin");
  desegment->add_option("--output", deseg_output,
                        "Where to write, - for stdout");
  desegment->add_option("--marker", deseg_marker, "Boundary marker token");

  // ---- syllabify ----
  auto* syllabify =
      app.add_subcommand("syllabify", "Split words into orthographic units");
  std::string syl_input = "-", syl_output = "-", syl_script;
  bool syl_dump = false, syl_list = false, syl_no_nfc = false;
  syllabify->add_option("--input", syl_input, "Text to split, - for stdin");
  syllabify->add_option("--output", syl_output,
                        "Where to write, - for stdout");
  syllabify->add_option("--script", syl_script,
                        "Script name or spec file path");
  syllabify->add_flag("--dump-script", syl_dump,
                      "Print the builtin spec for --script and exit");
  syllabify->add_flag("--list-scripts", syl_list,
                      "Print the builtin script names and exit");
  syllabify->add_flag("--no-nfc", syl_no_nfc,
                      "Skip NFC normalization on load");

  // ---- translit ----
  auto* translit =
      app.add_subcommand("translit", "Map text between script blocks");
  std::string tr_input = "-", tr_output = "-", tr_from, tr_to, tr_exceptions;
  bool tr_no_nfc = false;
  translit->add_option("--input", tr_input, "Text to map, - for stdin");
  translit->add_option("--output", tr_output, "Where to write, - for stdout");
  translit->add_option("--from", tr_from, "Source script name")->required();
  translit->add_option("--to", tr_to, "Target script name")->required();
  translit->add_option("--exceptions", tr_exceptions,
                       "Exceptions file with U+XXXX U+YYYY overrides");
  translit->add_flag("--no-nfc", tr_no_nfc, "Skip NFC normalization on load");

  // ---- vocab ----
  auto* vocab = app.add_subcommand("vocab", "Count units in a corpus");
  std::string vocab_input = "-", vocab_output = "-";
  bool vocab_char = false, vocab_no_nfc = false;
  vocab->add_option("--input", vocab_input, "Text to count, - for stdin");
  vocab->add_option("--output", vocab_output, "Where to write, - for stdout");
  vocab->add_flag("--char", vocab_char,
                  "Count characters instead of whitespace tokens");
  vocab->add_flag("--no-nfc", vocab_no_nfc, "Skip NFC normalization on load");

  // ---- lcsr ----
  auto* lcsr = app.add_subcommand(
      "lcsr", "Sentence-level longest-common-subsequence ratios");
  std::string lcsr_src, lcsr_tgt, lcsr_map, lcsr_exceptions;
  bool lcsr_no_nfc = false;
  lcsr->add_option("--src", lcsr_src, "Source side")->required();
  lcsr->add_option("--tgt", lcsr_tgt, "Target side")->required();
  lcsr->add_option("--translit-map", lcsr_map,
                   "from:to scripts for mapping the target side first");
  lcsr->add_option("--exceptions", lcsr_exceptions,
                   "Transliteration exceptions file");
  lcsr->add_flag("--no-nfc", lcsr_no_nfc, "Skip NFC normalization on load");

  // ---- correlate ----
  auto* correlate = app.add_subcommand(
      "correlate",
      "Pearson correlation between source similarity and output accuracy");
  std::string corr_src, corr_ref, corr_hyp;
  bool corr_no_nfc = false;
  correlate->add_option("--src", corr_src, "Source sentences")->required();
  correlate->add_option("--ref", corr_ref, "Reference translations")
      ->required();
  correlate->add_option("--hyp", corr_hyp, "System translations")->required();
  correlate->add_flag("--no-nfc", corr_no_nfc,
                      "Skip NFC normalization on load");

  // ---- bleu ----
  auto* bleu_cmd = app.add_subcommand("bleu", "Corpus BLEU score");
  std::string bleu_hyp, bleu_ref;
  int bleu_max_n = 4;
  bool bleu_soft = false;
  double bleu_threshold = 0.4;
  bleu_cmd->add_option("--hyp", bleu_hyp, "Hypothesis corpus")->required();
  bleu_cmd->add_option("--ref", bleu_ref, "Reference corpus")->required();
  bleu_cmd->add_option("--max-n", bleu_max_n, "Highest n-gram order");
  bleu_cmd->add_flag("--soft", bleu_soft,
                     "Give partial credit to near-miss n-grams");
  bleu_cmd->add_option("--threshold", bleu_threshold,
                       "Minimum similarity for partial credit");

  // ---- sigtest ----
  auto* sigtest = app.add_subcommand(
      "sigtest", "Paired bootstrap significance test between two systems");
  std::string sig_a, sig_b, sig_ref;
  uint64_t sig_samples = 0, sig_seed = 0;
  int sig_max_n = 4;
  bool sig_soft = false;
  double sig_threshold = 0.4;
  sigtest->add_option("--hyp-a", sig_a, "First system output")->required();
  sigtest->add_option("--hyp-b", sig_b, "Second system output")->required();
  sigtest->add_option("--ref", sig_ref, "Reference corpus")->required();
  sigtest->add_option("--samples", sig_samples, "Number of resamples")
      ->required();
  sigtest->add_option("--seed", sig_seed, "Resampling seed")->required();
  sigtest->add_option("--max-n", sig_max_n, "Highest n-gram order");
  sigtest->add_flag("--soft", sig_soft, "Score with partial n-gram credit");
  sigtest->add_option("--threshold", sig_threshold,
                      "Minimum similarity for partial credit");

  // ---- pipeline ----
  auto* pipeline =
      app.add_subcommand("pipeline", "Run one experiment config");
  std::string pipe_config;
  pipeline->add_option("--config", pipe_config, "Config file")->required();

  // ---- sweep ----
  auto* sweep =
      app.add_subcommand("sweep", "Run every config in a directory");
  std::string sweep_configs, sweep_out, sweep_ref, sweep_hyp_dir;
  sweep->add_option("--configs", sweep_configs, "Directory of config files")
      ->required();
  sweep->add_option("--out", sweep_out, "Summary TSV to write");
  sweep->add_option("--ref", sweep_ref,
                    "Reference corpus for scoring hypothesis files");
  sweep->add_option("--hyp-dir", sweep_hyp_dir,
                    "Directory of <config-stem>.txt hypothesis files");

  CLI11_PARSE(app, argc, argv);

  if (learn->parsed()) {
    if (merges_opt->count() == 0 && target_opt->count() == 0) {
      usage_error("learn needs --merges or --target-vocab");
    }
    bool joint = input2_opt->count() > 0;
    if (joint && target_opt->count() > 0) {
      usage_error("--target-vocab does not apply to joint models");
    }
    if (!joint && !learn_map.empty()) {
      usage_error("--translit-map needs --input2");
    }
    CorpusHandle corpus;
    load_corpus(corpus, learn_input, !learn_no_nfc, learn_marker);
    ModelHandle model;
    if (joint) {
      CorpusHandle second;
      load_corpus(second, learn_input2, !learn_no_nfc, learn_marker);
      TranslitHandle mapping;
      if (!learn_map.empty()) {
        make_mapping(mapping, learn_map, learn_exceptions);
      }
      check(subseg_bpe_learn_joint(corpus.h, second.h, learn_merges,
                                   mapping.h, learn_overlap, &model.h),
            "learning joint model");
    } else if (target_opt->count() > 0) {
      size_t achieved = 0;
      int below = 0, exhausted = 0;
      check(subseg_bpe_match_merges(corpus.h, learn_target, &model.h,
                                    &achieved, &below, &exhausted),
            "matching target vocabulary");
      if (below) {
        std::cerr << "subseg: warning: target vocabulary " << learn_target
                  << " is below the alphabet size; learned 0 merges\n";
      } else if (exhausted) {
        std::cerr << "subseg: warning: ran out of repeated pairs at "
                  << achieved << " distinct subwords, short of "
                  << learn_target << "\n";
      }
      std::cerr << "subseg: reached " << achieved << " distinct subwords with "
                << subseg_bpe_num_merges(model.h) << " merges\n";
    } else {
      check(subseg_bpe_learn(corpus.h, learn_merges, &model.h),
            "learning model");
    }
    if (!joint && target_opt->count() == 0) {
      size_t learned = subseg_bpe_num_merges(model.h);
      if (learned < learn_merges) {
        std::cerr << "subseg: warning: stopped after " << learned << " of "
                  << learn_merges << " requested merges (no pair left that "
                  << "occurs twice)\n";
      }
    }
    check(subseg_bpe_save(model.h, learn_output.c_str()),
          "saving " + learn_output);
    return 0;
  }

  if (segment->parsed()) {
    if (seg_scheme == "bpe" && seg_model.empty()) {
      usage_error("scheme bpe needs --model");
    }
    if (seg_scheme == "os" && seg_script.empty()) {
      usage_error("scheme os needs --script");
    }
    CorpusHandle corpus;
    load_corpus(corpus, seg_input, !seg_no_nfc, seg_marker);
    ModelHandle model;
    if (!seg_model.empty()) {
      check(subseg_bpe_load(seg_model.c_str(), &model.h),
            "loading " + seg_model);
    }
    ScriptHandle script;
    if (!seg_script.empty()) {
      check(subseg_script_resolve(seg_script.c_str(), &script.h),
            "resolving script " + seg_script);
    }
    CorpusHandle segmented;
    check(subseg_segment_corpus(corpus.h, seg_scheme.c_str(), model.h,
                                script.h, seg_marker.c_str(), &segmented.h),
          "segmenting");
    write_corpus(segmented, seg_output);
    return 0;
  }

  if (desegment->parsed()) {
    CorpusHandle corpus;
    load_corpus(corpus, deseg_input, false, "");
    CorpusHandle restored;
    check(subseg_desegment_corpus(corpus.h, deseg_marker.c_str(),
                                  &restored.h),
          "desegmenting");
    write_corpus(restored, deseg_output);
    return 0;
  }

  if (syllabify->parsed()) {
    if (syl_list) {
      StringOut names;
      check(subseg_script_builtin_names(&names.s), "listing scripts");
      std::cout << names.s << "\n";
      return 0;
    }
    if (syl_script.empty()) usage_error("syllabify needs --script");
    if (syl_dump) {
      StringOut text;
      check(subseg_script_dump(syl_script.c_str(), &text.s),
            "dumping script " + syl_script);
      write_text(syl_output, text.s);
      return 0;
    }
    ScriptHandle script;
    check(subseg_script_resolve(syl_script.c_str(), &script.h),
          "resolving script " + syl_script);
    CorpusHandle corpus;
    load_corpus(corpus, syl_input, !syl_no_nfc, "");
    StringOut text;
    check(subseg_corpus_text(corpus.h, &text.s), "rendering input");
    std::string output;
    for (const std::string& line : split_lines(text.s)) {
      StringOut units;
      check(subseg_syllabify_line(script.h, line.c_str(), &units.s),
            "syllabifying");
      output += units.s;
      output += '\n';
    }
    write_text(syl_output, output);
    return 0;
  }

  if (translit->parsed()) {
    TranslitHandle table;
    make_mapping(table, tr_from + ":" + tr_to, tr_exceptions);
    CorpusHandle corpus;
    load_corpus(corpus, tr_input, !tr_no_nfc, "");
    CorpusHandle mapped;
    uint64_t stats[5] = {0, 0, 0, 0, 0};
    check(subseg_translit_corpus(table.h, corpus.h, &mapped.h, stats),
          "transliterating");
    write_corpus(mapped, tr_output);
    std::cerr << "subseg: offset_mapped=" << stats[0]
              << " exceptions_applied=" << stats[1]
              << " placeholders_emitted=" << stats[2]
              << " unassigned_preserved=" << stats[3]
              << " passed_through=" << stats[4] << "\n";
    return 0;
  }

  if (vocab->parsed()) {
    CorpusHandle corpus;
    load_corpus(corpus, vocab_input, !vocab_no_nfc, "");
    StringOut tsv;
    check(subseg_corpus_vocab(corpus.h, vocab_char ? 1 : 0, &tsv.s),
          "counting");
    write_text(vocab_output, tsv.s);
    return 0;
  }

  if (lcsr->parsed()) {
    CorpusHandle src, tgt;
    load_corpus(src, lcsr_src, !lcsr_no_nfc, "");
    load_corpus(tgt, lcsr_tgt, !lcsr_no_nfc, "");
    TranslitHandle mapping;
    if (!lcsr_map.empty()) make_mapping(mapping, lcsr_map, lcsr_exceptions);
    DoublesOut values;
    size_t count = 0, compared = 0, skipped = 0, truncated = 0;
    double mean = 0.0;
    check(subseg_corpus_lcsr(src.h, tgt.h, mapping.h, &values.values, &count,
                             &mean, &compared, &skipped, &truncated),
          "computing lcsr");
    std::ostringstream out;
    out << "line\tlcsr\n";
    for (size_t i = 0; i < count; ++i) {
      out << (i + 1) << "\t";
      if (std::isnan(values.values[i])) {
        out << "NA";
      } else {
        out << format_score(values.values[i]);
      }
      out << "\n";
    }
    std::cout << out.str();
    std::cerr << "subseg: mean="
              << (compared ? format_score(mean) : std::string("NA"))
              << " compared=" << compared << " skipped=" << skipped
              << " truncated=" << truncated << "\n";
    return 0;
  }

  if (correlate->parsed()) {
    CorpusHandle src, ref, hyp;
    load_corpus(src, corr_src, !corr_no_nfc, "");
    load_corpus(ref, corr_ref, !corr_no_nfc, "");
    load_corpus(hyp, corr_hyp, !corr_no_nfc, "");
    double r = 0.0;
    size_t points = 0;
    check(subseg_correlate(src.h, ref.h, hyp.h, &r, &points), "correlating");
    std::cout << "pearson_r\t" << format_score(r) << "\n"
              << "points\t" << points << "\n";
    return 0;
  }

  if (bleu_cmd->parsed()) {
    CorpusHandle hyp, ref;
    load_corpus(hyp, bleu_hyp, false, "");
    load_corpus(ref, bleu_ref, false, "");
    std::vector<double> precisions(bleu_max_n > 0 ? bleu_max_n : 1, 0.0);
    double score = 0.0, bp = 1.0;
    uint64_t hyp_len = 0, ref_len = 0;
    check(subseg_bleu(hyp.h, ref.h, bleu_max_n, bleu_soft ? 1 : 0,
                      bleu_threshold, &score, precisions.data(), &bp,
                      &hyp_len, &ref_len),
          "scoring");
    std::cout << format_score(score) << "\n";
    std::cerr << "subseg: precisions=";
    for (int n = 0; n < bleu_max_n; ++n) {
      if (n) std::cerr << "/";
      std::cerr << format_score(precisions[n]);
    }
    std::cerr << " bp=" << format_score(bp) << " hyp_len=" << hyp_len
              << " ref_len=" << ref_len << "\n";
    return 0;
  }

  if (sigtest->parsed()) {
    CorpusHandle a, b, ref;
    load_corpus(a, sig_a, false, "");
    load_corpus(b, sig_b, false, "");
    load_corpus(ref, sig_ref, false, "");
    double p = 1.0, score_a = 0.0, score_b = 0.0, mean_delta = 0.0;
    uint64_t opposing = 0;
    check(subseg_bootstrap(a.h, b.h, ref.h, sig_max_n, sig_soft ? 1 : 0,
                           sig_threshold, sig_samples, sig_seed, &p, &score_a,
                           &score_b, &mean_delta, &opposing),
          "testing");
    std::cout << "score_a\t" << format_score(score_a) << "\n"
              << "score_b\t" << format_score(score_b) << "\n"
              << "delta\t" << format_score(score_a - score_b) << "\n"
              << "mean_delta\t" << format_score(mean_delta) << "\n"
              << "p_value\t" << format_score(p) << "\n"
              << "samples\t" << sig_samples << "\n"
              << "opposing\t" << opposing << "\n";
    return 0;
  }

  if (pipeline->parsed()) {
    StringOut manifest;
    check(subseg_pipeline_run_file(pipe_config.c_str(), &manifest.s),
          "running " + pipe_config);
    std::cout << manifest.s;
    return 0;
  }

  if (sweep->parsed()) {
    StringOut tsv;
    check(subseg_sweep(sweep_configs.c_str(),
                       sweep_out.empty() ? nullptr : sweep_out.c_str(),
                       sweep_ref.empty() ? nullptr : sweep_ref.c_str(),
                       sweep_hyp_dir.empty() ? nullptr : sweep_hyp_dir.c_str(),
                       &tsv.s),
          "sweeping " + sweep_configs);
    if (sweep_out.empty()) std::cout << tsv.s;
    return 0;
  }

  return 0;
}
