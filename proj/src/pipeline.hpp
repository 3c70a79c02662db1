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

#ifndef SUBSEG_SRC_PIPELINE_HPP_
#define SUBSEG_SRC_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.hpp"

namespace subseg {

// One experiment: a corpus, a segmentation scheme, and its parameters.
// Config files hold 'key = value' lines with '#' comments. Keys: scheme,
// input, input2, output_dir, merges, target_vocab, script, translit_map
// (from:to), translit_exceptions, marker, normalize (nfc|none),
// overlap_threshold.
struct PipelineConfig {
  std::string scheme;  // bpe | bpe_joint | os | char | word
  std::string input;
  std::string input2;
  std::string output_dir;
  std::optional<uint64_t> merges;
  std::optional<uint64_t> target_vocab;
  std::string script;
  std::string translit_map;
  std::string translit_exceptions;
  std::string marker = std::string(kDefaultMarker);
  Normalization normalization = Normalization::kNfc;
  double overlap_threshold = 0.1;

  static PipelineConfig parse_file(const std::string& path);
  static PipelineConfig parse_text(std::string_view text,
                                   const std::string& source_name);

  // Scheme-specific completeness and consistency checks; parse_* call it.
  void validate() const;
};

struct PipelineResult {
  std::string output_dir;
  std::vector<std::string> artifacts;  // file names inside output_dir
  std::string manifest_json;
  uint64_t lines = 0;
  uint64_t tokens = 0;
  uint64_t distinct_subwords = 0;      // boundary marker excluded
  uint64_t merges_learned = 0;
  bool early_stop = false;             // fewer merges than requested
  bool target_below_alphabet = false;
};

// Runs one experiment: learns the model where the scheme needs one,
// segments the corpus, and writes the artifacts (model.bpe for BPE schemes,
// segmented text, vocab.tsv, manifest.json). Everything is staged in a
// scratch directory next to output_dir and swapped in with one rename, so
// an interrupted run never leaves a half-written experiment. The manifest
// echoes the resolved config and the sha256 of every input and output;
// rerunning the same config reproduces it byte for byte.
PipelineResult run_pipeline(const PipelineConfig& config);

struct SweepOptions {
  std::string config_dir;
  std::string output_path;  // summary TSV
  std::string ref_path;     // optional references for scoring
  std::string hyp_dir;      // optional <config-stem>.txt hypothesis files
};

// Runs every config file in config_dir (sorted by file name), one row per
// config. A failing row reports its error code and the sweep continues.
// When references are given and hyp_dir holds a matching hypothesis file,
// the row also carries BLEU and soft BLEU. Returns the TSV text and writes
// it to output_path.
std::string run_sweep(const SweepOptions& options);

}  // namespace subseg

#endif  // SUBSEG_SRC_PIPELINE_HPP_
