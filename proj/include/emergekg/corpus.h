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

#ifndef EMERGEKG_CORPUS_H_
#define EMERGEKG_CORPUS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emergekg/text.h"

namespace emergekg {

enum class CoarseType { kPerson, kLocation, kOrganization };

std::string_view coarse_type_name(CoarseType type);  // "PERSON", ...
std::optional<CoarseType> parse_coarse_type(std::string_view name);

// One ranked search result. rank 1 is the top hit.
struct Snippet {
  int rank = 0;
  std::string title;
  std::string body;
  std::string url;
};

// A word of a document's raw text. `position` is the ordinal of the token
// in the unfiltered token stream, with an extra step wherever clause
// punctuation or a line break separates two words; two tokens are adjacent
// in the source iff their positions differ by one.
struct Token {
  std::string text;
  Span span;
  std::size_t position = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

struct ExtendedDocument {
  int source_rank = 0;
  std::string url;
  std::string raw_text;
  // Set when the linked page could not be fetched and raw_text holds the
  // snippet body alone.
  bool degraded = false;
  std::vector<Token> tokens;
};

enum class CorpusVariant { kExtended, kEnhanced };

std::string_view corpus_variant_name(CorpusVariant variant);
CorpusVariant parse_corpus_variant(std::string_view name);

// Replaces internal whitespace runs with a single '#'.
std::string fuse_mention(std::string_view surface);

struct TargetEntity {
  std::string surface;
  std::string fused_token;
  std::optional<CoarseType> coarse_type_hint;

  static TargetEntity from_surface(std::string_view surface,
                                   std::optional<CoarseType> hint = {});
};

struct Corpus {
  std::vector<ExtendedDocument> documents;
  CorpusVariant variant = CorpusVariant::kExtended;
  int n = 0;  // distinct source snippets
  TargetEntity target;
};

// Splits on whitespace and punctuation. '#' and hyphens between two word
// characters stay inside a token; bytes >= 0x80 count as word characters.
// Every token is kept, including digits and stop-words.
std::vector<Token> tokenize(std::string_view text);

bool is_stopword(std::string_view token, const WordSet& stopwords);

// Populates doc.tokens from doc.raw_text: pure-digit tokens and stop-words
// (compared lowercase) are dropped, case is preserved.
ExtendedDocument preprocess(ExtendedDocument doc, const WordSet& stopwords);

// corpus+: one document per rank, in rank order.
Corpus build_extended_corpus(std::vector<ExtendedDocument> docs,
                             const TargetEntity& target);

// corpus*: the rank-i document repeated n+1-i times, replicas grouped by
// ascending rank.
Corpus build_enhanced_corpus(std::vector<ExtendedDocument> docs,
                             const TargetEntity& target);

// Corpus cache: one line per document, "rank<TAB>tok tok ...\n".
std::string serialize_corpus(const Corpus& corpus);
Corpus parse_corpus(std::string_view text, const TargetEntity& target);

}  // namespace emergekg

#endif  // EMERGEKG_CORPUS_H_
