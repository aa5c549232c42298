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

#ifndef EMERGEKG_LEXICON_H_
#define EMERGEKG_LEXICON_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace emergekg {

// Noun lookup over WordNet database files: `index.noun` (one lemma per line,
// multi-word lemmas joined by '_', license preamble lines start with a space)
// and `noun.exc` (irregular "inflected base" pairs).
class Lexicon {
 public:
  // Throws Error(kLexicon) when either file is missing or malformed.
  static Lexicon load(const std::filesystem::path& dir);

  bool has_noun_entry(std::string_view lemma) const;

  // Base noun form of `word` (case-insensitive): the word itself when it is
  // listed, its exception-list base, or the first listed form produced by
  // the plural suffix rules. nullopt when there is no noun reading.
  std::optional<std::string> noun_lemma(std::string_view word) const;

  bool is_noun(std::string_view word) const { return noun_lemma(word).has_value(); }

  std::size_t size() const { return nouns_.size(); }

 private:
  std::unordered_set<std::string> nouns_;
  std::unordered_map<std::string, std::string> exceptions_;
};

}  // namespace emergekg

#endif  // EMERGEKG_LEXICON_H_
