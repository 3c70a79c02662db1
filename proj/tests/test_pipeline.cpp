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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bpe.hpp"
#include "error.hpp"
#include "pipeline.hpp"
#include "sha256.hpp"

namespace fs = std::filesystem;
using subseg::Error;
using subseg::ErrorCode;
using subseg::PipelineConfig;
using subseg::PipelineResult;

namespace {

// Fresh scratch directory per test case, removed on destruction.
struct TempDir {
  fs::path path;

  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / ("subseg_pipe_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }

  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }

  std::string file(const std::string& name, const std::string& content) const {
    fs::path p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
  }

  std::string sub(const std::string& name) const {
    return (path / name).string();
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void expect_config_error(const std::string& text, const std::string& needle,
                         ErrorCode code = ErrorCode::kInvalidArgument) {
  try {
    PipelineConfig::parse_text(text, "test.cfg");
    FAIL_CHECK("expected an error containing: " << needle);
  } catch (const Error& e) {
    CHECK(e.code() == code);
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("config files parse keys, comments, and blanks") {
  PipelineConfig config = PipelineConfig::parse_text(
      "# experiment\n"
      "scheme = bpe\n"
      "\n"
      "input = corpus.txt\n"
      "output_dir = out\n"
      "merges = 10\n"
      "marker = @@\n"
      "normalize = none\n",
      "test.cfg");
  CHECK(config.scheme == "bpe");
  CHECK(config.input == "corpus.txt");
  CHECK(config.output_dir == "out");
  REQUIRE(config.merges.has_value());
  CHECK(*config.merges == 10);
  CHECK_FALSE(config.target_vocab.has_value());
  CHECK(config.marker == "@@");
  CHECK(config.normalization == subseg::Normalization::kNone);
  CHECK(config.overlap_threshold == 0.1);
}

TEST_CASE("config parse errors name the file and line") {
  expect_config_error("scheme = char\nnot a pair\n", "test.cfg:2",
                      ErrorCode::kParse);
  expect_config_error("scheme =\n", "key = value", ErrorCode::kParse);
  expect_config_error("scheme = bpe\nwidget = 3\n", "unknown key 'widget'",
                      ErrorCode::kParse);
  expect_config_error("merges = ten\n", "non-negative integer",
                      ErrorCode::kParse);
  expect_config_error("normalize = maybe\n", "'nfc' or 'none'",
                      ErrorCode::kParse);
  expect_config_error("overlap_threshold = 1.5\n", "fraction",
                      ErrorCode::kParse);
}

TEST_CASE("config validation enforces scheme requirements") {
  const std::string base = "input = a.txt\noutput_dir = out\n";
  expect_config_error(base, "missing scheme");
  expect_config_error("scheme = rle\n" + base, "unknown scheme 'rle'");
  expect_config_error("scheme = char\noutput_dir = out\n", "missing input");
  expect_config_error("scheme = char\ninput = a.txt\n", "missing output_dir");
  expect_config_error("scheme = bpe\n" + base, "exactly one of");
  expect_config_error(
      "scheme = bpe\nmerges = 1\ntarget_vocab = 5\n" + base, "exactly one of");
  expect_config_error("scheme = char\nmerges = 5\n" + base,
                      "merges only applies");
  expect_config_error("scheme = os\ntarget_vocab = 5\nscript = latin\n" + base,
                      "target_vocab only applies");
  expect_config_error("scheme = bpe_joint\nmerges = 1\n" + base,
                      "needs input2");
  expect_config_error("scheme = bpe_joint\ninput2 = b.txt\n" + base,
                      "needs merges");
  expect_config_error(
      "scheme = bpe\nmerges = 1\ninput2 = b.txt\n" + base,
      "input2 only applies");
  expect_config_error(
      "scheme = char\ntranslit_map = devanagari:bengali\n" + base,
      "translit_map only applies");
  expect_config_error("scheme = os\n" + base, "needs script");
  expect_config_error("scheme = char\nscript = latin\n" + base,
                      "script only applies");
  expect_config_error("scheme = char\nmarker = a b\n" + base,
                      "whitespace");
}

TEST_CASE("character pipeline writes segments, vocab, and manifest") {
  TempDir tmp("char");
  std::string input = tmp.file("corpus.txt", "ab cd\nef\n");
  PipelineConfig config;
  config.scheme = "char";
  config.input = input;
  config.output_dir = tmp.sub("out");
  PipelineResult result = subseg::run_pipeline(config);

  CHECK(result.lines == 2);
  CHECK(result.tokens == 3);
  CHECK(result.distinct_subwords == 6);
  CHECK(result.artifacts ==
        std::vector<std::string>{"segmented.txt", "vocab.tsv",
                                 "manifest.json"});
  CHECK(read_file(tmp.sub("out") + "/segmented.txt") ==
        "a b _ c d\ne f\n");

  nlohmann::json manifest =
      nlohmann::json::parse(read_file(tmp.sub("out") + "/manifest.json"));
  CHECK(manifest["tool"] == "subseg");
  CHECK(manifest["manifest_version"] == 1);
  CHECK(manifest["config"]["scheme"] == "char");
  CHECK(manifest["config"]["marker"] == "_");
  CHECK(manifest["config"]["normalize"] == "nfc");
  CHECK(manifest["inputs"][input] == subseg::sha256_file(input));
  CHECK(manifest["stats"]["lines"] == 2);
  CHECK(manifest["stats"]["tokens"] == 3);
  CHECK(manifest["stats"]["distinct_subwords"] == 6);
  // Every recorded output hash matches the artifact on disk.
  for (const auto& [name, digest] : manifest["outputs"].items()) {
    CHECK(digest == subseg::sha256_hex(read_file(tmp.sub("out") + "/" + name)));
  }
  CHECK_FALSE(fs::exists(tmp.sub("out") + ".staging"));
}

TEST_CASE("word pipeline keeps tokens intact") {
  TempDir tmp("word");
  std::string input = tmp.file("corpus.txt", "ab cd\nef\n");
  PipelineConfig config;
  config.scheme = "word";
  config.input = input;
  config.output_dir = tmp.sub("out");
  PipelineResult result = subseg::run_pipeline(config);
  CHECK(read_file(tmp.sub("out") + "/segmented.txt") == "ab cd\nef\n");
  CHECK(result.distinct_subwords == 3);
  CHECK_FALSE(fs::exists(tmp.sub("out") + "/model.bpe"));
}

TEST_CASE("syllable pipeline records the resolved script") {
  TempDir tmp("os");
  std::string input = tmp.file("corpus.txt", "spacious rooms\n");
  PipelineConfig config;
  config.scheme = "os";
  config.script = "latin";
  config.input = input;
  config.output_dir = tmp.sub("out");
  subseg::run_pipeline(config);
  CHECK(read_file(tmp.sub("out") + "/segmented.txt") ==
        "spa ciou s _ roo ms\n");
  nlohmann::json manifest =
      nlohmann::json::parse(read_file(tmp.sub("out") + "/manifest.json"));
  CHECK(manifest["stats"]["script"] == "latin");
  // Builtin scripts are not hashed as inputs.
  CHECK(manifest["inputs"].size() == 1);
}

TEST_CASE("syllable pipeline hashes a script file given by path") {
  TempDir tmp("os_file");
  std::string input = tmp.file("corpus.txt", "aba\n");
  std::string spec = tmp.file("toy.script",
                              "[meta]\n"
                              "name = toy\n"
                              "kind = alphabet\n"
                              "[vowels]\n"
                              "U+0061\n"
                              "[consonants]\n"
                              "U+0062\n");
  PipelineConfig config;
  config.scheme = "os";
  config.script = spec;
  config.input = input;
  config.output_dir = tmp.sub("out");
  subseg::run_pipeline(config);
  nlohmann::json manifest =
      nlohmann::json::parse(read_file(tmp.sub("out") + "/manifest.json"));
  CHECK(manifest["inputs"][spec] == subseg::sha256_file(spec));
  CHECK(manifest["stats"]["script"] == "toy");
}

TEST_CASE("bpe pipeline writes a loadable model and reversible segments") {
  TempDir tmp("bpe");
  std::string input = tmp.file("corpus.txt", "aaab aaab ab\nab aaab\n");
  PipelineConfig config;
  config.scheme = "bpe";
  config.input = input;
  config.output_dir = tmp.sub("out");
  config.merges = 2;
  PipelineResult result = subseg::run_pipeline(config);

  CHECK(result.merges_learned == 2);
  CHECK_FALSE(result.early_stop);
  CHECK(result.artifacts ==
        std::vector<std::string>{"model.bpe", "segmented.txt", "vocab.tsv",
                                 "manifest.json"});
  subseg::BpeModel model =
      subseg::load_model(tmp.sub("out") + "/model.bpe");
  REQUIRE(model.merges.size() == 2);
  CHECK(model.merges[0].left == "a");
  CHECK(model.merges[0].right == "a");
  CHECK(model.merges[1].left == "a");
  CHECK(model.merges[1].right == "b");

  nlohmann::json manifest =
      nlohmann::json::parse(read_file(tmp.sub("out") + "/manifest.json"));
  CHECK(manifest["stats"]["merges_requested"] == 2);
  CHECK(manifest["stats"]["merges_learned"] == 2);
  CHECK(manifest["stats"]["early_stop"] == false);
  CHECK(manifest["config"]["merges"] == 2);
}

TEST_CASE("bpe pipeline flags an early stop") {
  TempDir tmp("early");
  std::string input = tmp.file("corpus.txt", "ab\n");
  PipelineConfig config;
  config.scheme = "bpe";
  config.input = input;
  config.output_dir = tmp.sub("out");
  config.merges = 10;
  PipelineResult result = subseg::run_pipeline(config);
  CHECK(result.early_stop);
  CHECK(result.merges_learned == 0);
  nlohmann::json manifest =
      nlohmann::json::parse(read_file(tmp.sub("out") + "/manifest.json"));
  CHECK(manifest["stats"]["early_stop"] == true);
}

TEST_CASE("bpe pipeline resolves a vocabulary target") {
  TempDir tmp("target");
  std::string input = tmp.file("corpus.txt", "aaab aaab ab\nab aaab\n");
  PipelineConfig config;
  config.scheme = "bpe";
  config.input = input;
  config.output_dir = tmp.sub("out");
  config.target_vocab = 4;
  PipelineResult result = subseg::run_pipeline(config);
  nlohmann::json manifest =
      nlohmann::json::parse(read_file(tmp.sub("out") + "/manifest.json"));
  CHECK(manifest["stats"]["target_vocab"] == 4);
  CHECK(manifest["stats"].contains("achieved_vocab"));
  CHECK(manifest["stats"]["target_below_alphabet"] == false);
  CHECK(manifest["stats"].contains("exhausted"));
  CHECK(manifest["config"]["target_vocab"] == 4);
  CHECK_FALSE(result.target_below_alphabet);
}

TEST_CASE("joint pipeline segments both sides with one model") {
  TempDir tmp("joint");
  std::string input = tmp.file("src.txt", "ab ab\n");
  std::string input2 = tmp.file("tgt.txt", "abc bc\n");
  PipelineConfig config;
  config.scheme = "bpe_joint";
  config.input = input;
  config.input2 = input2;
  config.output_dir = tmp.sub("out");
  config.merges = 1;
  PipelineResult result = subseg::run_pipeline(config);

  CHECK(result.artifacts ==
        std::vector<std::string>{"model.bpe", "segmented.source.txt",
                                 "segmented.target.txt", "vocab.tsv",
                                 "manifest.json"});
  // Summed pair counts pick (a, b): two on the source side, one on the
  // target side.
  subseg::BpeModel model = subseg::load_model(tmp.sub("out") + "/model.bpe");
  REQUIRE(model.merges.size() == 1);
  CHECK(model.merges[0].left == "a");
  CHECK(model.merges[0].right == "b");
  CHECK(read_file(tmp.sub("out") + "/segmented.source.txt") == "ab _ ab\n");
  CHECK(read_file(tmp.sub("out") + "/segmented.target.txt") ==
        "ab c _ b c\n");

  nlohmann::json manifest =
      nlohmann::json::parse(read_file(tmp.sub("out") + "/manifest.json"));
  CHECK(manifest["stats"]["lines2"] == 1);
  CHECK(manifest["stats"]["tokens2"] == 2);
  CHECK(manifest["inputs"].size() == 2);
  CHECK(manifest["config"]["overlap_threshold"] == 0.1);
}

TEST_CASE("joint pipeline transliterates the second corpus first") {
  TempDir tmp("joint_map");
  // Source Devanagari, target Bengali, same text up to the block offset.
  std::string input = tmp.file("src.txt",
                               "\xe0\xa4\x95\xe0\xa4\xae\xe0\xa4\xb2\n");
  std::string input2 = tmp.file("tgt.txt",
                                "\xe0\xa6\x95\xe0\xa6\xae\xe0\xa6\xb2\n");
  PipelineConfig config;
  config.scheme = "bpe_joint";
  config.input = input;
  config.input2 = input2;
  config.output_dir = tmp.sub("out");
  config.merges = 1;
  config.translit_map = "bengali:devanagari";
  subseg::run_pipeline(config);

  // The target side is segmented in mapped (Devanagari) characters.
  std::string target = read_file(tmp.sub("out") + "/segmented.target.txt");
  CHECK(target.find("\xe0\xa4\x95") != std::string::npos);
  CHECK(target.find("\xe0\xa6\x95") == std::string::npos);
  nlohmann::json manifest =
      nlohmann::json::parse(read_file(tmp.sub("out") + "/manifest.json"));
  CHECK(manifest["config"]["translit_map"] == "bengali:devanagari");
}

TEST_CASE("rerunning a pipeline reproduces every artifact byte for byte") {
  TempDir tmp("rerun");
  std::string input = tmp.file("corpus.txt", "aaab aaab ab\nxy xz aaab\n");
  PipelineConfig config;
  config.scheme = "bpe";
  config.input = input;
  config.output_dir = tmp.sub("out");
  config.merges = 3;
  PipelineResult first = subseg::run_pipeline(config);
  std::vector<std::string> contents;
  for (const std::string& name : first.artifacts) {
    contents.push_back(read_file(tmp.sub("out") + "/" + name));
  }
  PipelineResult second = subseg::run_pipeline(config);
  REQUIRE(second.artifacts == first.artifacts);
  for (size_t i = 0; i < first.artifacts.size(); ++i) {
    CHECK(read_file(tmp.sub("out") + "/" + first.artifacts[i]) ==
          contents[i]);
  }
}

TEST_CASE("a new run clears stale artifacts from the output directory") {
  TempDir tmp("swap");
  std::string input = tmp.file("corpus.txt", "aaab ab\n");
  PipelineConfig bpe;
  bpe.scheme = "bpe";
  bpe.input = input;
  bpe.output_dir = tmp.sub("out");
  bpe.merges = 1;
  subseg::run_pipeline(bpe);
  REQUIRE(fs::exists(tmp.sub("out") + "/model.bpe"));

  PipelineConfig chars;
  chars.scheme = "char";
  chars.input = input;
  chars.output_dir = tmp.sub("out");
  subseg::run_pipeline(chars);
  CHECK_FALSE(fs::exists(tmp.sub("out") + "/model.bpe"));
  CHECK(fs::exists(tmp.sub("out") + "/segmented.txt"));
  CHECK_FALSE(fs::exists(tmp.sub("out") + ".staging"));
}

TEST_CASE("pipeline input validation") {
  TempDir tmp("badinput");
  PipelineConfig config;
  config.scheme = "char";
  config.input = tmp.sub("missing.txt");
  config.output_dir = tmp.sub("out");
  try {
    subseg::run_pipeline(config);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
  config.input = tmp.file("empty.txt", "");
  try {
    subseg::run_pipeline(config);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
}

TEST_CASE("sweeps run every config in name order and keep going on errors") {
  TempDir tmp("sweep");
  std::string input = tmp.file("corpus.txt", "ab ab cd\n");
  auto config_text = [&](const std::string& scheme, const std::string& out,
                         const std::string& extra) {
    return "scheme = " + scheme + "\ninput = " + input + "\noutput_dir = " +
           tmp.sub(out) + "\n" + extra;
  };
  fs::create_directories(tmp.sub("configs"));
  tmp.file("configs/a_char.cfg", config_text("char", "out_a", ""));
  tmp.file("configs/b_broken.cfg", "scheme = os\n");
  tmp.file("configs/c_bpe.cfg", config_text("bpe", "out_c", "merges = 1\n"));
  tmp.file("configs/d_missing.cfg",
           "scheme = char\ninput = " + tmp.sub("nope.txt") +
               "\noutput_dir = " + tmp.sub("out_d") + "\n");
  tmp.file("configs/.hidden", "ignored");

  subseg::SweepOptions options;
  options.config_dir = tmp.sub("configs");
  options.output_path = tmp.sub("summary.tsv");
  std::string tsv = subseg::run_sweep(options);

  CHECK(read_file(tmp.sub("summary.tsv")) == tsv);
  std::vector<std::string> lines;
  std::stringstream stream(tsv);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] ==
        "config\tscheme\tstatus\tmerges\tdistinct_subwords\tbleu\tsoft_bleu");
  CHECK(lines[1] == "a_char.cfg\tchar\tok\t-\t4\t-\t-");
  CHECK(lines[2] == "b_broken.cfg\t-\terror(invalid_argument)\t-\t-\t-\t-");
  CHECK(lines[3] == "c_bpe.cfg\tbpe\tok\t1\t3\t-\t-");
  CHECK(lines[4] == "d_missing.cfg\tchar\terror(io)\t-\t-\t-\t-");
}

TEST_CASE("sweeps score configs that have a matching hypothesis file") {
  TempDir tmp("sweep_score");
  std::string input = tmp.file("corpus.txt", "ab cd\n");
  fs::create_directories(tmp.sub("configs"));
  tmp.file("configs/exp.cfg", "scheme = char\ninput = " + input +
                                  "\noutput_dir = " + tmp.sub("out") + "\n");
  tmp.file("configs/other.cfg", "scheme = word\ninput = " + input +
                                    "\noutput_dir = " + tmp.sub("out2") +
                                    "\n");
  std::string refs = tmp.file("refs.txt", "x y z\n");
  fs::create_directories(tmp.sub("hyps"));
  tmp.file("hyps/exp.txt", "x y w\n");

  subseg::SweepOptions options;
  options.config_dir = tmp.sub("configs");
  options.ref_path = refs;
  options.hyp_dir = tmp.sub("hyps");
  std::string tsv = subseg::run_sweep(options);

  // exp.txt exists and gets scored; a three-token line has no 4-grams, so
  // both metrics bottom out at zero but still print as numbers.
  CHECK(tsv.find("exp.cfg\tchar\tok\t-\t4\t0.000000\t0.000000") !=
        std::string::npos);
  // other.cfg has no hypothesis file and keeps dashes.
  CHECK(tsv.find("other.cfg\tword\tok\t-\t2\t-\t-") != std::string::npos);
}

TEST_CASE("a sweep needs an existing config directory") {
  TempDir tmp("sweep_missing");
  subseg::SweepOptions options;
  options.config_dir = tmp.sub("not_there");
  try {
    subseg::run_sweep(options);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}
