// Copyright 2026 The emergekg Authors.
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

#include "emergekg/lexicon.h"

#include <array>
#include <charconv>
#include <sstream>
#include <utility>
#include <vector>

#include "emergekg/error.h"
#include "emergekg/text.h"

namespace emergekg {
namespace {

// Noun detachment rules of the WordNet morphological processor.
constexpr std::array<std::pair<std::string_view, std::string_view>, 8> kNounSuffixes = {{
    {"s", ""}, {"ses", "s"}, {"xes", "x"}, {"zes", "z"},
    {"ches", "ch"}, {"shes", "sh"}, {"men", "man"}, {"ies", "y"},
}};

bool parse_int(std::string_view s, int& out) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

}  // namespace

Lexicon Lexicon::load(const std::filesystem::path& dir) {
  Lexicon lex;
  std::string index_text;
  std::string exc_text;
  try {
    index_text = read_file(dir / "index.noun");
    exc_text = read_file(dir / "noun.exc");
  } catch (const Error& e) {
    throw Error(ErrorCode::kLexicon, std::string("lexicon: ") + e.what());
  }

  std::istringstream index(index_text);
  std::string line;
  int line_no = 0;
  while (std::getline(index, line)) {
    ++line_no;
    if (line.empty() || line[0] == ' ') continue;
    std::vector<std::string> f = split_whitespace(line);
    // lemma pos synset_cnt p_cnt [ptr_symbol...] sense_cnt tagsense_cnt
    // synset_offset...
    auto bad = [&] {
      return Error(ErrorCode::kLexicon,
                   "index.noun line " + std::to_string(line_no) + " is malformed");
    };
    int synsets = 0;
    int pointers = 0;
    if (f.size() < 4 || f[1] != "n" || !parse_int(f[2], synsets) ||
        !parse_int(f[3], pointers) || synsets < 1 || pointers < 0) {
      throw bad();
    }
    if (f.size() != static_cast<std::size_t>(4 + pointers + 2 + synsets)) throw bad();
    std::string lemma = to_lower(f[0]);
    for (char& c : lemma) {
      if (c == '_') c = ' ';
    }
    lex.nouns_.insert(std::move(lemma));
  }
  if (lex.nouns_.empty()) {
    throw Error(ErrorCode::kLexicon, "index.noun in " + dir.string() + " lists no nouns");
  }

  std::istringstream exc(exc_text);
  line_no = 0;
  while (std::getline(exc, line)) {
    ++line_no;
    std::vector<std::string> f = split_whitespace(line);
    if (f.empty()) continue;
    if (f.size() < 2) {
      throw Error(ErrorCode::kLexicon,
                  "noun.exc line " + std::to_string(line_no) + " is malformed");
    }
    lex.exceptions_.emplace(to_lower(f[0]), to_lower(f[1]));
  }
  return lex;
}

bool Lexicon::has_noun_entry(std::string_view lemma) const {
  return nouns_.contains(std::string(lemma));
}

std::optional<std::string> Lexicon::noun_lemma(std::string_view word) const {
  std::string lower = to_lower(word);
  if (nouns_.contains(lower)) return lower;
  if (auto it = exceptions_.find(lower); it != exceptions_.end()) {
    if (nouns_.contains(it->second)) return it->second;
  }
  for (const auto& [suffix, replacement] : kNounSuffixes) {
    if (lower.size() > suffix.size() && lower.ends_with(suffix)) {
      std::string base = lower.substr(0, lower.size() - suffix.size());
      base += replacement;
      if (nouns_.contains(base)) return base;
    }
  }
  return std::nullopt;
}

}  // namespace emergekg
