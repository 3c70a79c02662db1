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

#include "ortho.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "error.hpp"
#include "strings.hpp"
#include "utf8.hpp"

namespace subseg {

CharClass ScriptSpec::classify(char32_t cp) const {
  if (combining.count(cp)) return CharClass::kCombining;
  if (vowels.count(cp)) return CharClass::kVowel;
  if (consonants.count(cp)) return CharClass::kConsonant;
  return CharClass::kOther;
}

void ScriptSpec::validate() const {
  auto overlap = [](const std::unordered_set<char32_t>& a,
                    const std::unordered_set<char32_t>& b)
      -> std::optional<char32_t> {
    for (char32_t cp : a) {
      if (b.count(cp)) return cp;
    }
    return std::nullopt;
  };
  if (auto cp = overlap(vowels, consonants)) {
    throw Error(ErrorCode::kInvalidArgument,
                "script '" + name + "': " + strings::format_codepoint(*cp) +
                    " is listed as both vowel and consonant");
  }
  if (auto cp = overlap(combining, vowels)) {
    throw Error(ErrorCode::kInvalidArgument,
                "script '" + name + "': " + strings::format_codepoint(*cp) +
                    " is listed as both combining and vowel");
  }
  if (auto cp = overlap(combining, consonants)) {
    throw Error(ErrorCode::kInvalidArgument,
                "script '" + name + "': " + strings::format_codepoint(*cp) +
                    " is listed as both combining and consonant");
  }
  if (vowels.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "script '" + name + "' lists no vowels");
  }
  if (kind == ScriptKind::kAbugida) {
    if (block_base == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "abugida script '" + name + "' needs block_base");
    }
    if (virama == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "abugida script '" + name + "' needs a virama");
    }
    if (!combining.count(virama)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "script '" + name + "': virama " +
                      strings::format_codepoint(virama) +
                      " must be listed in [combining]");
    }
  }
}

namespace {

void push_unit(std::vector<std::string>& units, const std::u32string& unit) {
  std::string encoded;
  for (char32_t cp : unit) utf8::append(encoded, cp);
  units.push_back(std::move(encoded));
}

void attach_or_single(std::vector<std::string>& units, char32_t cp) {
  std::string encoded;
  utf8::append(encoded, cp);
  if (units.empty()) {
    units.push_back(std::move(encoded));
  } else {
    units.back() += encoded;
  }
}

std::vector<std::string> syllabify_alphabet(const std::vector<char32_t>& cps,
                                            const ScriptSpec& spec) {
  std::vector<std::string> units;
  const size_t n = cps.size();
  size_t i = 0;
  auto cls = [&](size_t k) { return spec.classify(cps[k]); };
  while (i < n) {
    CharClass c = cls(i);
    if (c == CharClass::kCombining) {
      attach_or_single(units, cps[i]);
      ++i;
      continue;
    }
    if (c == CharClass::kOther) {
      std::u32string unit(1, cps[i]);
      push_unit(units, unit);
      ++i;
      continue;
    }
    std::u32string unit;
    if (c == CharClass::kConsonant) {
      while (i < n && (cls(i) == CharClass::kConsonant ||
                       cls(i) == CharClass::kCombining)) {
        unit += cps[i];
        ++i;
      }
    }
    if (i < n && cls(i) == CharClass::kVowel) {
      while (i < n &&
             (cls(i) == CharClass::kVowel || cls(i) == CharClass::kCombining)) {
        unit += cps[i];
        ++i;
      }
    }
    push_unit(units, unit);
  }
  return units;
}

std::vector<std::string> syllabify_abugida(const std::vector<char32_t>& cps,
                                           const ScriptSpec& spec) {
  std::vector<std::string> units;
  const size_t n = cps.size();
  const char32_t virama = spec.virama;
  size_t i = 0;
  auto cls = [&](size_t k) { return spec.classify(cps[k]); };
  auto is_mark = [&](size_t k) {
    return cls(k) == CharClass::kCombining && cps[k] != virama;
  };
  // Whether the consonant cluster starting at k (just after a virama)
  // reaches a vowel through further virama joins.
  auto cluster_before_vowel = [&](size_t k) {
    while (k < n && cls(k) == CharClass::kConsonant) {
      ++k;
      while (k < n && is_mark(k)) ++k;
      if (k < n && cps[k] == virama) {
        ++k;
        continue;
      }
      return k < n && cls(k) == CharClass::kVowel;
    }
    return false;
  };

  while (i < n) {
    CharClass c = cls(i);
    if (c == CharClass::kCombining) {
      attach_or_single(units, cps[i]);
      ++i;
      continue;
    }
    if (c == CharClass::kOther) {
      std::u32string unit(1, cps[i]);
      push_unit(units, unit);
      ++i;
      continue;
    }
    std::u32string unit;
    if (c == CharClass::kVowel) {
      unit += cps[i];
      ++i;
      while (i < n && cls(i) == CharClass::kCombining) {
        unit += cps[i];
        ++i;
      }
      push_unit(units, unit);
      continue;
    }
    // Consonant: absorb marks, then either chain through a virama whose
    // cluster ends in a vowel, close on a dangling virama, or absorb the
    // dependent vowel. A bare consonant closes with its inherent vowel.
    unit += cps[i];
    ++i;
    while (true) {
      while (i < n && is_mark(i)) {
        unit += cps[i];
        ++i;
      }
      if (i < n && cps[i] == virama) {
        if (i + 1 < n && cls(i + 1) == CharClass::kConsonant &&
            cluster_before_vowel(i + 1)) {
          unit += virama;
          ++i;
          unit += cps[i];
          ++i;
          continue;
        }
        unit += virama;
        ++i;
        break;
      }
      if (i < n && cls(i) == CharClass::kVowel) {
        unit += cps[i];
        ++i;
        while (i < n && cls(i) == CharClass::kCombining) {
          unit += cps[i];
          ++i;
        }
        break;
      }
      break;
    }
    push_unit(units, unit);
  }
  return units;
}

}  // namespace

std::vector<std::string> syllabify(std::string_view word,
                                   const ScriptSpec& spec) {
  std::vector<char32_t> cps = utf8::decode(word);
  if (spec.kind == ScriptKind::kAbugida) return syllabify_abugida(cps, spec);
  return syllabify_alphabet(cps, spec);
}

std::vector<std::string> OrthoSegmenter::segment_word(
    const std::string& word) const {
  return syllabify(word, *spec_);
}

namespace {

char32_t parse_char_field(std::string_view field, const std::string& where) {
  if (auto cp = strings::parse_codepoint_literal(field)) return *cp;
  std::vector<char32_t> cps = utf8::decode(field);
  if (cps.size() != 1) {
    throw Error(ErrorCode::kParse,
                where + ": expected a single character or U+XXXX, got '" +
                    std::string(field) + "'");
  }
  return cps[0];
}

void add_char_line(std::unordered_set<char32_t>& set, std::string_view line,
                   const std::string& where) {
  for (std::string_view field : strings::split_ws(line)) {
    size_t dots = field.find("..");
    if (dots != std::string_view::npos &&
        (field.substr(0, 2) == "U+" || field.substr(0, 2) == "u+")) {
      auto lo = strings::parse_codepoint_literal(field.substr(0, dots));
      auto hi = strings::parse_codepoint_literal(field.substr(dots + 2));
      if (!lo || !hi || *hi < *lo) {
        throw Error(ErrorCode::kParse, where + ": malformed range '" +
                                           std::string(field) + "'");
      }
      for (char32_t cp = *lo; cp <= *hi; ++cp) set.insert(cp);
    } else if (field.size() > 1 &&
               (field.substr(0, 2) == "U+" || field.substr(0, 2) == "u+")) {
      set.insert(parse_char_field(field, where));
    } else {
      for (char32_t cp : utf8::decode(field)) set.insert(cp);
    }
  }
}

char32_t parse_meta_codepoint(const std::string& value,
                              const std::string& where) {
  if (value.size() > 2 && (value[0] == '0') && (value[1] == 'x')) {
    return static_cast<char32_t>(std::stoul(value, nullptr, 16));
  }
  return parse_char_field(value, where);
}

}  // namespace

ScriptSpec parse_script_spec(std::string_view text,
                             const std::string& source_name) {
  ScriptSpec spec;
  std::map<std::string, std::string> meta;
  std::string section;
  size_t line_no = 0;
  for (std::string_view raw : strings::split_lines(text)) {
    ++line_no;
    std::string_view line = strings::trim(raw);
    std::string where = source_name + ":" + std::to_string(line_no);
    // '#' starts a comment anywhere on the line; a literal '#' in a
    // character class must be written as U+0023.
    if (size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = strings::trim(line.substr(0, hash));
    }
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = std::string(line.substr(1, line.size() - 2));
      if (section != "meta" && section != "vowels" &&
          section != "consonants" && section != "combining") {
        throw Error(ErrorCode::kParse,
                    where + ": unknown section '[" + section + "]'");
      }
      continue;
    }
    if (section.empty()) {
      throw Error(ErrorCode::kParse, where + ": content before any section");
    }
    if (section == "meta") {
      size_t eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw Error(ErrorCode::kParse, where + ": expected 'key = value'");
      }
      std::string key(strings::trim(line.substr(0, eq)));
      std::string value(strings::trim(line.substr(eq + 1)));
      if (key.empty() || value.empty()) {
        throw Error(ErrorCode::kParse, where + ": expected 'key = value'");
      }
      meta[key] = value;
    } else if (section == "vowels") {
      add_char_line(spec.vowels, line, where);
    } else if (section == "consonants") {
      add_char_line(spec.consonants, line, where);
    } else {
      add_char_line(spec.combining, line, where);
    }
  }

  auto meta_at = [&](const char* key) -> std::string {
    auto it = meta.find(key);
    if (it == meta.end()) {
      throw Error(ErrorCode::kParse,
                  source_name + ": missing meta key '" + std::string(key) +
                      "'");
    }
    return it->second;
  };
  spec.name = meta_at("name");
  std::string kind = meta_at("kind");
  if (kind == "alphabet") {
    spec.kind = ScriptKind::kAlphabet;
  } else if (kind == "abugida") {
    spec.kind = ScriptKind::kAbugida;
  } else {
    throw Error(ErrorCode::kParse,
                source_name + ": kind must be 'alphabet' or 'abugida', got '" +
                    kind + "'");
  }
  if (auto it = meta.find("block_base"); it != meta.end()) {
    spec.block_base = parse_meta_codepoint(it->second, source_name);
  }
  if (auto it = meta.find("virama"); it != meta.end()) {
    spec.virama = parse_meta_codepoint(it->second, source_name);
  } else if (spec.kind == ScriptKind::kAbugida && spec.block_base != 0) {
    spec.virama = spec.block_base + 0x4D;
  }
  spec.validate();
  return spec;
}

ScriptSpec load_script_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open script spec: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_script_spec(buffer.str(), path);
}

namespace {

void emit_set(std::string& out, const std::unordered_set<char32_t>& set) {
  std::vector<char32_t> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  size_t i = 0;
  while (i < sorted.size()) {
    size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[j] + 1) ++j;
    if (j > i + 1) {
      out += strings::format_codepoint(sorted[i]) + ".." +
             strings::format_codepoint(sorted[j]) + "\n";
    } else {
      for (size_t k = i; k <= j; ++k) {
        out += strings::format_codepoint(sorted[k]) + "\n";
      }
    }
    i = j + 1;
  }
}

}  // namespace

std::string serialize_script_spec(const ScriptSpec& spec) {
  std::string out = "[meta]\nname = " + spec.name + "\nkind = ";
  out += spec.kind == ScriptKind::kAbugida ? "abugida" : "alphabet";
  out += "\n";
  if (spec.block_base) {
    out += "block_base = " + strings::format_codepoint(spec.block_base) + "\n";
  }
  if (spec.virama) {
    out += "virama = " + strings::format_codepoint(spec.virama) + "\n";
  }
  out += "\n[vowels]\n";
  emit_set(out, spec.vowels);
  out += "\n[consonants]\n";
  emit_set(out, spec.consonants);
  out += "\n[combining]\n";
  emit_set(out, spec.combining);
  return out;
}

namespace {

constexpr const char* kLatinSpec = R"(# Latin alphabet inventory.
[meta]
name = latin
kind = alphabet

[vowels]
a e i o u
A E I O U
à á â ã ä å æ è é ê ë ì í î ï ò ó ô õ ö ø ù ú û ü ý ÿ œ
À Á Â Ã Ä Å Æ È É Ê Ë Ì Í Î Ï Ò Ó Ô Õ Ö Ø Ù Ú Û Ü Ý Œ
ā ē ī ō ū Ā Ē Ī Ō Ū ă ĕ ĭ ŏ ŭ ą ę į ų

[consonants]
b c d f g h j k l m n p q r s t v w x y z
B C D F G H J K L M N P Q R S T V W X Y Z
ç ñ š ž ß þ ð ć č đ ł ř ş ť ź ż ğ
Ç Ñ Š Ž Þ Ð Ć Č Đ Ł Ř Ş Ť Ź Ż Ğ

[combining]
U+0300..U+0308
U+030A..U+030C
U+0327..U+0328
)";

constexpr const char* kCyrillicSpec = R"(# Cyrillic alphabet inventory.
[meta]
name = cyrillic
kind = alphabet

[vowels]
а е ё и о у ы э ю я
А Е Ё И О У Ы Э Ю Я
і ї є ѣ І Ї Є

[consonants]
б в г д ж з й к л м н п р с т ф х ц ч ш щ
Б В Г Д Ж З Й К Л М Н П Р С Т Ф Х Ц Ч Ш Щ
ґ ђ ћ џ љ њ ѓ ќ ў
Ґ Ђ Ћ Џ Љ Њ Ѓ Ќ Ў

[combining]
ь ъ Ь Ъ
U+0300..U+0301
)";

constexpr const char* kDevanagariSpec = R"(# Devanagari inventory.
[meta]
name = devanagari
kind = abugida
block_base = U+0900
virama = U+094D

[vowels]
U+0904..U+0914
U+093A..U+093B
U+093E..U+094C
U+094E..U+094F
U+0955..U+0957
U+0960..U+0961
U+0962..U+0963
U+0972

[consonants]
U+0915..U+0939
U+0958..U+095F

[combining]
U+0900..U+0903
U+093C
U+094D
U+0951..U+0954
)";

constexpr const char* kBengaliSpec = R"(# Bengali inventory.
[meta]
name = bengali
kind = abugida
block_base = U+0980

[vowels]
U+0985..U+0994
U+09BE..U+09C4
U+09C7..U+09C8
U+09CB..U+09CC
U+09D7
U+09E0..U+09E3

[consonants]
U+0995..U+09B9
U+09CE
U+09DC..U+09DF
U+09F0..U+09F1

[combining]
U+0980..U+0983
U+09BC
U+09CD
U+09FE
)";

constexpr const char* kGurmukhiSpec = R"(# Gurmukhi inventory.
[meta]
name = gurmukhi
kind = abugida
block_base = U+0A00

[vowels]
U+0A05..U+0A14
U+0A3E..U+0A42
U+0A47..U+0A48
U+0A4B..U+0A4C

[consonants]
U+0A15..U+0A39
U+0A59..U+0A5C
U+0A5E

[combining]
U+0A01..U+0A03
U+0A3C
U+0A4D
U+0A70..U+0A71
U+0A75
)";

constexpr const char* kTamilSpec = R"(# Tamil inventory.
[meta]
name = tamil
kind = abugida
block_base = U+0B80

[vowels]
U+0B85..U+0B94
U+0BBE..U+0BC2
U+0BC6..U+0BC8
U+0BCA..U+0BCC
U+0BD7

[consonants]
U+0B95..U+0BB9

[combining]
U+0B82..U+0B83
U+0BCD
)";

constexpr const char* kTeluguSpec = R"(# Telugu inventory.
[meta]
name = telugu
kind = abugida
block_base = U+0C00

[vowels]
U+0C05..U+0C14
U+0C3E..U+0C44
U+0C46..U+0C48
U+0C4A..U+0C4C
U+0C55..U+0C56
U+0C60..U+0C63

[consonants]
U+0C15..U+0C39
U+0C58..U+0C5A

[combining]
U+0C00..U+0C04
U+0C3C
U+0C4D
)";

constexpr const char* kMalayalamSpec = R"(# Malayalam inventory.
[meta]
name = malayalam
kind = abugida
block_base = U+0D00

[vowels]
U+0D05..U+0D14
U+0D3E..U+0D44
U+0D46..U+0D48
U+0D4A..U+0D4C
U+0D57
U+0D60..U+0D63

[consonants]
U+0D15..U+0D3A
U+0D7A..U+0D7F

[combining]
U+0D00..U+0D03
U+0D3B..U+0D3C
U+0D4D
)";

struct BuiltinEntry {
  const char* name;
  const char* text;      // null for aliases
  const char* alias_of;  // null for canonical entries
};

constexpr BuiltinEntry kBuiltinScripts[] = {
    {"latin", kLatinSpec, nullptr},
    {"cyrillic", kCyrillicSpec, nullptr},
    {"devanagari", kDevanagariSpec, nullptr},
    {"bengali", kBengaliSpec, nullptr},
    {"gurmukhi", kGurmukhiSpec, nullptr},
    {"tamil", kTamilSpec, nullptr},
    {"telugu", kTeluguSpec, nullptr},
    {"malayalam", kMalayalamSpec, nullptr},
    {"hindi", nullptr, "devanagari"},
    {"marathi", nullptr, "devanagari"},
    {"nepali", nullptr, "devanagari"},
    {"assamese", nullptr, "bengali"},
    {"punjabi", nullptr, "gurmukhi"},
};

const BuiltinEntry* find_builtin(const std::string& name) {
  for (const auto& entry : kBuiltinScripts) {
    if (name == entry.name) {
      if (entry.alias_of) return find_builtin(entry.alias_of);
      return &entry;
    }
  }
  return nullptr;
}

}  // namespace

const std::vector<std::string>& builtin_script_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& entry : kBuiltinScripts) v.push_back(entry.name);
    std::sort(v.begin(), v.end());
    return v;
  }();
  return names;
}

bool has_builtin_script(const std::string& name) {
  return find_builtin(name) != nullptr;
}

std::string builtin_script_text(const std::string& name) {
  const BuiltinEntry* entry = find_builtin(name);
  if (!entry) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown builtin script '" + name + "'");
  }
  return entry->text;
}

ScriptSpec builtin_script(const std::string& name) {
  const BuiltinEntry* entry = find_builtin(name);
  if (!entry) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown builtin script '" + name + "'");
  }
  return parse_script_spec(entry->text, entry->name);
}

ScriptSpec resolve_script(const std::string& name_or_path) {
  if (has_builtin_script(name_or_path)) return builtin_script(name_or_path);
  if (std::filesystem::exists(name_or_path)) {
    return load_script_spec(name_or_path);
  }
  std::string known;
  for (const auto& name : builtin_script_names()) {
    if (!known.empty()) known += ", ";
    known += name;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "'" + name_or_path +
                  "' is neither a builtin script nor a spec file (builtin: " +
                  known + ")");
}

}  // namespace subseg
