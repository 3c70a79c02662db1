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

#include "pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "bpe.hpp"
#include "codec.hpp"
#include "error.hpp"
#include "eval.hpp"
#include "ortho.hpp"
#include "sha256.hpp"
#include "strings.hpp"
#include "translit.hpp"

namespace subseg {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

uint64_t parse_count(const std::string& value, const std::string& where) {
  try {
    size_t used = 0;
    unsigned long long n = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return n;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParse,
                where + ": expected a non-negative integer, got '" + value +
                    "'");
  }
}

double parse_fraction(const std::string& value, const std::string& where) {
  try {
    size_t used = 0;
    double x = std::stod(value, &used);
    if (used != value.size() || x < 0.0 || x > 1.0) {
      throw std::invalid_argument(value);
    }
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParse,
                where + ": expected a fraction in [0, 1], got '" + value +
                    "'");
  }
}

}  // namespace

PipelineConfig PipelineConfig::parse_text(std::string_view text,
                                          const std::string& source_name) {
  PipelineConfig config;
  size_t line_no = 0;
  for (std::string_view raw : strings::split_lines(text)) {
    ++line_no;
    std::string_view line = strings::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::string where = source_name + ":" + std::to_string(line_no);
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kParse, where + ": expected 'key = value'");
    }
    std::string key(strings::trim(line.substr(0, eq)));
    std::string value(strings::trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      throw Error(ErrorCode::kParse, where + ": expected 'key = value'");
    }
    if (key == "scheme") {
      config.scheme = value;
    } else if (key == "input") {
      config.input = value;
    } else if (key == "input2") {
      config.input2 = value;
    } else if (key == "output_dir") {
      config.output_dir = value;
    } else if (key == "merges") {
      config.merges = parse_count(value, where);
    } else if (key == "target_vocab") {
      config.target_vocab = parse_count(value, where);
    } else if (key == "script") {
      config.script = value;
    } else if (key == "translit_map") {
      config.translit_map = value;
    } else if (key == "translit_exceptions") {
      config.translit_exceptions = value;
    } else if (key == "marker") {
      config.marker = value;
    } else if (key == "normalize") {
      if (value == "nfc") {
        config.normalization = Normalization::kNfc;
      } else if (value == "none") {
        config.normalization = Normalization::kNone;
      } else {
        throw Error(ErrorCode::kParse,
                    where + ": normalize must be 'nfc' or 'none', got '" +
                        value + "'");
      }
    } else if (key == "overlap_threshold") {
      config.overlap_threshold = parse_fraction(value, where);
    } else {
      throw Error(ErrorCode::kParse, where + ": unknown key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

PipelineConfig PipelineConfig::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str(), path);
}

void PipelineConfig::validate() const {
  auto require = [&](bool ok, const std::string& what) {
    if (!ok) {
      throw Error(ErrorCode::kInvalidArgument, "config: " + what);
    }
  };
  require(!scheme.empty(), "missing scheme");
  require(scheme == "bpe" || scheme == "bpe_joint" || scheme == "os" ||
              scheme == "char" || scheme == "word",
          "unknown scheme '" + scheme +
              "' (expected bpe, bpe_joint, os, char, or word)");
  require(!input.empty(), "missing input");
  require(!output_dir.empty(), "missing output_dir");
  require(!marker.empty(), "marker must not be empty");
  for (char c : marker) {
    require(!std::isspace(static_cast<unsigned char>(c)),
            "marker must not contain whitespace");
  }
  if (scheme == "bpe") {
    require(merges.has_value() != target_vocab.has_value(),
            "scheme bpe needs exactly one of merges or target_vocab");
  } else {
    require(!target_vocab.has_value(),
            "target_vocab only applies to scheme bpe");
  }
  if (scheme == "bpe_joint") {
    require(merges.has_value(), "scheme bpe_joint needs merges");
    require(!input2.empty(), "scheme bpe_joint needs input2");
  } else {
    require(input2.empty(), "input2 only applies to scheme bpe_joint");
    require(translit_map.empty(),
            "translit_map only applies to scheme bpe_joint");
    require(translit_exceptions.empty(),
            "translit_exceptions only applies to scheme bpe_joint");
    if (scheme != "bpe") {
      require(!merges.has_value(), "merges only applies to BPE schemes");
    }
  }
  if (scheme == "os") {
    require(!script.empty(), "scheme os needs script");
  } else {
    require(script.empty(), "script only applies to scheme os");
  }
}

namespace {

struct Artifact {
  std::string name;
  std::string content;
};

std::string vocab_tsv(const std::vector<const Corpus*>& segmented,
                      const std::string& marker, uint64_t* distinct) {
  std::unordered_map<std::string, uint64_t> counts;
  for (const Corpus* corpus : segmented) {
    for (const Sentence& sentence : corpus->sentences()) {
      for (const std::string& token : sentence.tokens) {
        if (token == marker) continue;
        ++counts[token];
      }
    }
  }
  *distinct = counts.size();
  return format_vocab_tsv(counts, "subword");
}

TransliterationTable make_mapping(const PipelineConfig& config) {
  size_t colon = config.translit_map.find(':');
  if (colon == std::string::npos || colon == 0 ||
      colon + 1 == config.translit_map.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "translit_map must be 'from:to', got '" + config.translit_map +
                    "'");
  }
  TransliterationTable table =
      builtin_translit_table(config.translit_map.substr(0, colon),
                             config.translit_map.substr(colon + 1));
  if (!config.translit_exceptions.empty()) {
    load_exceptions_file(table, config.translit_exceptions);
  }
  return table;
}

ordered_json config_echo(const PipelineConfig& config) {
  ordered_json echo;
  echo["scheme"] = config.scheme;
  echo["input"] = config.input;
  if (!config.input2.empty()) echo["input2"] = config.input2;
  echo["output_dir"] = config.output_dir;
  if (config.merges) echo["merges"] = *config.merges;
  if (config.target_vocab) echo["target_vocab"] = *config.target_vocab;
  if (!config.script.empty()) echo["script"] = config.script;
  if (!config.translit_map.empty()) {
    echo["translit_map"] = config.translit_map;
    echo["overlap_threshold"] = config.overlap_threshold;
  } else if (config.scheme == "bpe_joint") {
    echo["overlap_threshold"] = config.overlap_threshold;
  }
  if (!config.translit_exceptions.empty()) {
    echo["translit_exceptions"] = config.translit_exceptions;
  }
  echo["marker"] = config.marker;
  echo["normalize"] =
      config.normalization == Normalization::kNfc ? "nfc" : "none";
  return echo;
}

void write_artifact(const fs::path& dir, const Artifact& artifact) {
  fs::path path = dir / artifact.name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write artifact: " + path.string());
  }
  out << artifact.content;
  out.flush();
  if (!out) {
    throw Error(ErrorCode::kIo, "failed writing artifact: " + path.string());
  }
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
  config.validate();
  Corpus corpus =
      Corpus::load_file(config.input, config.normalization, config.marker);
  if (corpus.line_count() == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "input corpus is empty: " + config.input);
  }

  PipelineResult result;
  result.output_dir = config.output_dir;
  result.lines = corpus.line_count();
  result.tokens = corpus.token_count();

  std::vector<Artifact> artifacts;
  ordered_json stats;
  stats["lines"] = result.lines;
  stats["tokens"] = result.tokens;

  ordered_json inputs;
  inputs[config.input] = sha256_file(config.input);

  Corpus segmented;
  std::optional<Corpus> segmented2;

  if (config.scheme == "word") {
    segmented = corpus;
  } else if (config.scheme == "char") {
    CharSegmenter segmenter;
    segmented = segment_corpus(corpus, segmenter, config.marker);
  } else if (config.scheme == "os") {
    ScriptSpec spec = resolve_script(config.script);
    if (!has_builtin_script(config.script)) {
      inputs[config.script] = sha256_file(config.script);
    }
    stats["script"] = spec.name;
    OrthoSegmenter segmenter(spec);
    segmented = segment_corpus(corpus, segmenter, config.marker);
  } else if (config.scheme == "bpe") {
    BpeModel model;
    if (config.merges) {
      model = learn_bpe(corpus, *config.merges);
      stats["merges_requested"] = *config.merges;
      result.early_stop = model.merges.size() < *config.merges;
      stats["early_stop"] = result.early_stop;
    } else {
      MatchResult match = match_merges(corpus, *config.target_vocab);
      model = std::move(match.model);
      stats["target_vocab"] = match.target_vocab;
      stats["achieved_vocab"] = match.achieved_vocab;
      stats["target_below_alphabet"] = match.target_below_alphabet;
      stats["exhausted"] = match.exhausted;
      result.target_below_alphabet = match.target_below_alphabet;
    }
    result.merges_learned = model.merges.size();
    stats["merges_learned"] = result.merges_learned;
    stats["alphabet_size"] = model.alphabet.size();
    artifacts.push_back({"model.bpe", serialize_model(model)});
    BpeSegmenter segmenter(model);
    segmented = segment_corpus(corpus, segmenter, config.marker);
  } else {  // bpe_joint
    Corpus corpus2 =
        Corpus::load_file(config.input2, config.normalization, config.marker);
    if (corpus2.line_count() == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "input corpus is empty: " + config.input2);
    }
    inputs[config.input2] = sha256_file(config.input2);
    std::optional<TransliterationTable> mapping;
    if (!config.translit_map.empty()) {
      mapping = make_mapping(config);
      if (!config.translit_exceptions.empty()) {
        inputs[config.translit_exceptions] =
            sha256_file(config.translit_exceptions);
      }
    }
    BpeModel model =
        learn_joint(corpus, corpus2, *config.merges,
                    mapping ? &*mapping : nullptr, config.overlap_threshold);
    result.merges_learned = model.merges.size();
    result.early_stop = model.merges.size() < *config.merges;
    stats["merges_requested"] = *config.merges;
    stats["merges_learned"] = result.merges_learned;
    stats["early_stop"] = result.early_stop;
    stats["alphabet_size"] = model.alphabet.size();
    stats["lines2"] = corpus2.line_count();
    stats["tokens2"] = corpus2.token_count();
    artifacts.push_back({"model.bpe", serialize_model(model)});
    BpeSegmenter segmenter(model);
    segmented = segment_corpus(corpus, segmenter, config.marker);
    Corpus mapped2 = mapping ? transliterate(corpus2, *mapping) : corpus2;
    segmented2 = segment_corpus(mapped2, segmenter, config.marker);
  }

  if (segmented2) {
    artifacts.push_back({"segmented.source.txt", segmented.to_text()});
    artifacts.push_back({"segmented.target.txt", segmented2->to_text()});
  } else {
    artifacts.push_back({"segmented.txt", segmented.to_text()});
  }

  std::vector<const Corpus*> sides{&segmented};
  if (segmented2) sides.push_back(&*segmented2);
  artifacts.push_back(
      {"vocab.tsv",
       vocab_tsv(sides, config.marker, &result.distinct_subwords)});
  stats["distinct_subwords"] = result.distinct_subwords;

  ordered_json manifest;
  manifest["tool"] = "subseg";
  manifest["manifest_version"] = 1;
  manifest["config"] = config_echo(config);
  manifest["inputs"] = inputs;
  ordered_json outputs;
  for (const Artifact& artifact : artifacts) {
    outputs[artifact.name] = sha256_hex(artifact.content);
  }
  manifest["outputs"] = outputs;
  manifest["stats"] = stats;
  result.manifest_json = manifest.dump(2) + "\n";
  artifacts.push_back({"manifest.json", result.manifest_json});

  fs::path out_dir(config.output_dir);
  fs::path staging(config.output_dir + ".staging");
  std::error_code ec;
  fs::remove_all(staging, ec);
  fs::create_directories(staging);
  if (!fs::is_directory(staging)) {
    throw Error(ErrorCode::kIo,
                "cannot create staging directory: " + staging.string());
  }
  for (const Artifact& artifact : artifacts) {
    write_artifact(staging, artifact);
    result.artifacts.push_back(artifact.name);
  }
  fs::remove_all(out_dir, ec);
  fs::rename(staging, out_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot move " + staging.string() + " to " +
                                    out_dir.string() + ": " + ec.message());
  }
  return result;
}

std::string run_sweep(const SweepOptions& options) {
  fs::path dir(options.config_dir);
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kIo,
                "config directory not found: " + options.config_dir);
  }
  std::vector<fs::path> configs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    if (name.empty() || name[0] == '.') continue;
    configs.push_back(entry.path());
  }
  std::sort(configs.begin(), configs.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.filename().string() < b.filename().string();
            });

  std::optional<Corpus> refs;
  if (!options.ref_path.empty()) {
    refs = Corpus::load_file(options.ref_path, Normalization::kNfc, "");
  }

  std::string tsv =
      "config\tscheme\tstatus\tmerges\tdistinct_subwords\tbleu\tsoft_bleu\n";
  for (const fs::path& path : configs) {
    std::string scheme = "-";
    std::string status = "ok";
    std::string merges = "-";
    std::string distinct = "-";
    std::string bleu_col = "-";
    std::string soft_col = "-";
    try {
      PipelineConfig config = PipelineConfig::parse_file(path.string());
      scheme = config.scheme;
      PipelineResult result = run_pipeline(config);
      if (config.scheme == "bpe" || config.scheme == "bpe_joint") {
        merges = std::to_string(result.merges_learned);
      }
      distinct = std::to_string(result.distinct_subwords);
      if (refs && !options.hyp_dir.empty()) {
        fs::path hyp_path =
            fs::path(options.hyp_dir) / (path.stem().string() + ".txt");
        if (fs::exists(hyp_path)) {
          Corpus hyps =
              Corpus::load_file(hyp_path.string(), Normalization::kNfc, "");
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.6f", bleu(hyps, *refs).score);
          bleu_col = buf;
          std::snprintf(buf, sizeof buf, "%.6f", soft_bleu(hyps, *refs).score);
          soft_col = buf;
        }
      }
    } catch (const Error& e) {
      status = std::string("error(") + error_code_name(e.code()) + ")";
    } catch (const std::exception&) {
      status = "error(internal)";
    }
    tsv += path.filename().string() + "\t" + scheme + "\t" + status + "\t" +
           merges + "\t" + distinct + "\t" + bleu_col + "\t" + soft_col + "\n";
  }

  if (!options.output_path.empty()) {
    std::ofstream out(options.output_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::kIo,
                  "cannot write sweep summary: " + options.output_path);
    }
    out << tsv;
    out.flush();
    if (!out) {
      throw Error(ErrorCode::kIo,
                  "failed writing sweep summary: " + options.output_path);
    }
  }
  return tsv;
}

}  // namespace subseg
