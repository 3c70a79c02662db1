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
#include <string>

#include "corpus.hpp"
#include "error.hpp"
#include "translit.hpp"
#include "unicode_norm.hpp"
#include "utf8.hpp"

using subseg::Corpus;
using subseg::Error;
using subseg::ErrorCode;
using subseg::TranslitStats;
using subseg::TransliterationTable;

namespace {

std::string cp_string(char32_t cp) {
  std::string out;
  subseg::utf8::append(out, cp);
  return out;
}

}  // namespace

TEST_CASE("devanagari KA maps to bengali KA by block offset") {
  TransliterationTable table =
      subseg::builtin_translit_table("devanagari", "bengali");
  CHECK(subseg::transliterate(cp_string(0x0915), table) == cp_string(0x0995));
}

TEST_CASE("words map character by character across blocks") {
  TransliterationTable table =
      subseg::builtin_translit_table("devanagari", "bengali");
  TranslitStats stats;
  // bhaarata: every character sits at the same offset in both blocks.
  std::string mapped = subseg::transliterate(
      "\xe0\xa4\xad\xe0\xa4\xbe\xe0\xa4\xb0\xe0\xa4\xa4", table, &stats);
  CHECK(mapped == "\xe0\xa6\xad\xe0\xa6\xbe\xe0\xa6\xb0\xe0\xa6\xa4");
  CHECK(stats.offset_mapped == 4);
  CHECK(stats.passed_through == 0);
}

TEST_CASE("characters outside the source block pass through") {
  TransliterationTable table =
      subseg::builtin_translit_table("devanagari", "bengali");
  TranslitStats stats;
  std::string mapped =
      subseg::transliterate("ab \xe0\xa4\x95 12", table, &stats);
  CHECK(mapped == "ab \xe0\xa6\x95 12");
  CHECK(stats.offset_mapped == 1);
  CHECK(stats.passed_through == 6);
}

TEST_CASE("round trip over the mapped range is the identity") {
  TransliterationTable fwd =
      subseg::builtin_translit_table("devanagari", "bengali");
  TransliterationTable back =
      subseg::builtin_translit_table("bengali", "devanagari");
  const auto* deva = subseg::unicode::find_indic_block("devanagari");
  const auto* beng = subseg::unicode::find_indic_block("bengali");
  REQUIRE(deva != nullptr);
  REQUIRE(beng != nullptr);
  size_t checked = 0;
  for (uint32_t off = 0; off < 0x80; ++off) {
    // Only offsets assigned on both sides map cleanly in both directions.
    if (!deva->assigned(off) || !beng->assigned(off)) continue;
    std::string d = cp_string(deva->base + off);
    std::string b = subseg::transliterate(d, fwd);
    CHECK(subseg::transliterate(b, back) == d);
    ++checked;
  }
  CHECK(checked > 60);
}

TEST_CASE("unassigned target offsets become private-use placeholders") {
  // U+0904 (short A) has no Bengali counterpart at offset 0x04.
  TransliterationTable table =
      subseg::builtin_translit_table("devanagari", "bengali");
  TranslitStats stats;
  std::string mapped = subseg::transliterate(cp_string(0x0904), table, &stats);
  CHECK(stats.placeholders_emitted == 1);
  CHECK(stats.exceptions_applied == 1);
  size_t pos = 0;
  char32_t cp = 0;
  REQUIRE(subseg::utf8::decode_next(mapped, pos, cp));
  CHECK(cp == 0xE000 + 0x04);
  // Distinct unmappable characters keep distinct placeholders.
  std::string other = subseg::transliterate(cp_string(0x0929), table);
  CHECK(other == cp_string(0xE000 + 0x29));
}

TEST_CASE("offsets unassigned in the source block are preserved verbatim") {
  // Bengali has holes (U+0984 among them); Devanagari fills its block, so
  // the bengali -> devanagari direction exercises source-side preservation.
  TransliterationTable table =
      subseg::builtin_translit_table("bengali", "devanagari");
  const auto* beng = subseg::unicode::find_indic_block("bengali");
  REQUIRE(beng != nullptr);
  uint32_t hole = 0x80;
  for (uint32_t off = 0; off < 0x80; ++off) {
    if (!beng->assigned(off)) {
      hole = off;
      break;
    }
  }
  REQUIRE(hole < 0x80);
  TranslitStats stats;
  std::string text = cp_string(beng->base + hole);
  CHECK(subseg::transliterate(text, table, &stats) == text);
  CHECK(stats.unassigned_preserved == 1);
}

TEST_CASE("exception entries win over the block offset") {
  TransliterationTable table =
      subseg::builtin_translit_table("devanagari", "bengali");
  // Reroute KA outside the target block so no offset output collides.
  table.exceptions[0x0915] = 0x0A15;
  table.validate();
  CHECK(subseg::transliterate(cp_string(0x0915), table) == cp_string(0x0A15));
  TranslitStats stats;
  subseg::transliterate(cp_string(0x0915), table, &stats);
  CHECK(stats.exceptions_applied == 1);
  CHECK(stats.offset_mapped == 0);
}

TEST_CASE("exceptions files add overrides with later entries winning") {
  auto path = std::filesystem::temp_directory_path() / "subseg_exc.tsv";
  {
    std::ofstream out(path);
    out << "# test overrides\n";
    out << "U+0915 U+0A15\n";
    out << "\n";
    out << "U+0915 U+0A16\n";  // later entry replaces the first
  }
  TransliterationTable table =
      subseg::builtin_translit_table("devanagari", "bengali");
  subseg::load_exceptions_file(table, path.string());
  CHECK(subseg::transliterate(cp_string(0x0915), table) == cp_string(0x0A16));
  std::filesystem::remove(path);
}

TEST_CASE("malformed exceptions files report the line") {
  auto check_bad = [](const std::string& content, const std::string& needle) {
    auto path = std::filesystem::temp_directory_path() / "subseg_exc_bad.tsv";
    {
      std::ofstream out(path);
      out << content;
    }
    TransliterationTable table =
        subseg::builtin_translit_table("devanagari", "bengali");
    try {
      subseg::load_exceptions_file(table, path.string());
      FAIL_CHECK("expected a parse error for: " << needle);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kParse);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
    std::filesystem::remove(path);
  };
  check_bad("U+0915\n", "U+XXXX U+YYYY");
  check_bad("U+0915 U+0995 U+0996\n", "U+XXXX U+YYYY");
  check_bad("U+XYZ U+0995\n", "malformed");
}

TEST_CASE("validation rejects colliding exception outputs") {
  TransliterationTable table =
      subseg::builtin_translit_table("devanagari", "bengali");
  table.exceptions[0x0915] = 0x0999;
  table.exceptions[0x0916] = 0x0999;  // same output twice
  try {
    table.validate();
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
}

TEST_CASE("validation rejects an exception shadowing an offset output") {
  TransliterationTable table =
      subseg::builtin_translit_table("devanagari", "bengali");
  // U+0916 offset-maps to U+0996; an exception sending KA there collides.
  table.exceptions[0x0915] = 0x0996;
  CHECK_THROWS_AS(table.validate(), const Error&);
}

TEST_CASE("corpus transliteration maps every token") {
  TransliterationTable table =
      subseg::builtin_translit_table("devanagari", "bengali");
  Corpus c = Corpus::from_text(
      "\xe0\xa4\x95 \xe0\xa4\x96\n\xe0\xa4\x97\n");
  TranslitStats stats;
  Corpus mapped = subseg::transliterate(c, table, &stats);
  CHECK(mapped.to_text() ==
        "\xe0\xa6\x95 \xe0\xa6\x96\n\xe0\xa6\x97\n");
  CHECK(stats.offset_mapped == 3);
}

TEST_CASE("mappable fraction counts source-block characters") {
  TransliterationTable table =
      subseg::builtin_translit_table("devanagari", "bengali");
  // Two of four token characters are Devanagari; spaces do not count.
  Corpus c = Corpus::from_text("\xe0\xa4\x95""a \xe0\xa4\x96""b\n");
  CHECK(subseg::mappable_fraction(c, table) == doctest::Approx(0.5));
  Corpus empty = Corpus::from_text("\n");
  CHECK(subseg::mappable_fraction(empty, table) == 0.0);
}

TEST_CASE("all six indic blocks pair up in both directions") {
  const auto& blocks = subseg::unicode::indic_blocks();
  REQUIRE(blocks.size() == 6);
  for (const auto& from : blocks) {
    for (const auto& to : blocks) {
      if (std::string(from.name) == to.name) continue;
      TransliterationTable table =
          subseg::builtin_translit_table(from.name, to.name);
      CHECK(table.source_base == from.base);
      CHECK(table.target_base == to.base);
      CHECK_NOTHROW(table.validate());
    }
  }
}

TEST_CASE("unknown scripts and identity pairs are rejected") {
  try {
    subseg::builtin_translit_table("devanagari", "klingon");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupported);
    CHECK(std::string(e.what()).find("bengali") != std::string::npos);
  }
  CHECK_THROWS_AS(subseg::builtin_translit_table("tamil", "tamil"),
                  const Error&);
}
