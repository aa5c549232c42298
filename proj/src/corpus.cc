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

#include "emergekg/corpus.h"

#include <algorithm>
#include <charconv>
#include <map>

#include "emergekg/error.h"

namespace emergekg {
namespace {

bool is_ascii_alnum(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z');
}

// Length of a multi-byte UTF-8 punctuation or space sequence at text[i]
// (dashes, curly quotes, bullets, guillemets, (c) and (r) signs, no-break
// space), 0 otherwise.
std::size_t utf8_punct_len(std::string_view text, std::size_t i) {
  auto at = [&](std::size_t k) -> unsigned char {
    return k < text.size() ? static_cast<unsigned char>(text[k]) : 0;
  };
  unsigned char c0 = at(i);
  if (c0 == 0xC2 && (at(i + 1) == 0xA0 || at(i + 1) == 0xB7 ||
                     at(i + 1) == 0xAB || at(i + 1) == 0xBB || at(i + 1) == 0xA9 ||
                     at(i + 1) == 0xAE)) {
    return 2;
  }
  if (c0 == 0xE2 && at(i + 1) == 0x80) {
    unsigned char c2 = at(i + 2);
    if ((c2 >= 0x90 && c2 <= 0xA7) || c2 == 0xA6 || c2 == 0xB9 ||
        c2 == 0xBA) {
      return 3;
    }
  }
  return 0;
}

bool is_clause_break(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '(': case ')': case '[': case ']': case '{': case '}':
    case '"': case '|': case '\n': case '\r': case '-': case '/':
      return true;
    default:
      return false;
  }
}

bool is_all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

}  // namespace

std::string_view coarse_type_name(CoarseType type) {
  switch (type) {
    case CoarseType::kPerson: return "PERSON";
    case CoarseType::kLocation: return "LOCATION";
    case CoarseType::kOrganization: return "ORGANIZATION";
  }
  return "PERSON";
}

std::optional<CoarseType> parse_coarse_type(std::string_view name) {
  if (name == "PERSON") return CoarseType::kPerson;
  if (name == "LOCATION") return CoarseType::kLocation;
  if (name == "ORGANIZATION") return CoarseType::kOrganization;
  return std::nullopt;
}

std::string_view corpus_variant_name(CorpusVariant variant) {
  return variant == CorpusVariant::kExtended ? "extended" : "enhanced";
}

CorpusVariant parse_corpus_variant(std::string_view name) {
  if (name == "extended") return CorpusVariant::kExtended;
  if (name == "enhanced") return CorpusVariant::kEnhanced;
  throw Error(ErrorCode::kInvalidArgument,
              "corpus variant must be extended or enhanced, got '" +
                  std::string(name) + "'");
}

std::string fuse_mention(std::string_view surface) {
  std::string fused;
  for (const std::string& word : split_whitespace(surface)) {
    if (!fused.empty()) fused.push_back('#');
    fused += word;
  }
  return fused;
}

TargetEntity TargetEntity::from_surface(std::string_view surface,
                                        std::optional<CoarseType> hint) {
  TargetEntity target;
  target.surface = normalize_whitespace(surface);
  if (target.surface.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "target surface is empty");
  }
  target.fused_token = fuse_mention(target.surface);
  target.coarse_type_hint = hint;
  return target;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t position = 0;
  bool gap = false;
  std::size_t i = 0;
  auto is_word_byte = [&](std::size_t k) {
    if (k >= text.size()) return false;
    auto c = static_cast<unsigned char>(text[k]);
    if (c >= 0x80) return utf8_punct_len(text, k) == 0;
    return is_ascii_alnum(c) || c == '#';
  };
  while (i < text.size()) {
    if (!is_word_byte(i)) {
      std::size_t plen = utf8_punct_len(text, i);
      bool nbsp = plen == 2 && static_cast<unsigned char>(text[i + 1]) == 0xA0;
      if (is_clause_break(text[i]) || (plen > 0 && !nbsp)) gap = true;
      i += plen > 0 ? plen : 1;
      continue;
    }
    std::size_t start = i;
    while (i < text.size()) {
      if (is_word_byte(i)) {
        ++i;
      } else if (text[i] == '-' && i > start && is_word_byte(i + 1) &&
                 text[i - 1] != '#' && text[i + 1] != '#') {
        ++i;
      } else {
        break;
      }
    }
    std::size_t end = i;
    // '#' is reserved as fusion glue; strip it from token edges.
    while (start < end && text[start] == '#') ++start;
    while (end > start && text[end - 1] == '#') --end;
    if (end == start) continue;
    if (!tokens.empty()) position += gap ? 2 : 1;
    gap = false;
    tokens.push_back(
        Token{std::string(text.substr(start, end - start)), {start, end},
              position});
  }
  return tokens;
}

bool is_stopword(std::string_view token, const WordSet& stopwords) {
  return stopwords.contains(to_lower(token));
}

ExtendedDocument preprocess(ExtendedDocument doc, const WordSet& stopwords) {
  if (trim(doc.raw_text).empty()) {
    throw Error(ErrorCode::kEmptyDocument,
                "document of rank " + std::to_string(doc.source_rank) +
                    " has empty text");
  }
  std::vector<Token> all = tokenize(doc.raw_text);
  doc.tokens.clear();
  for (Token& t : all) {
    if (is_all_digits(t.text) || is_stopword(t.text, stopwords)) continue;
    doc.tokens.push_back(std::move(t));
  }
  if (doc.tokens.empty()) {
    throw Error(ErrorCode::kEmptyDocument,
                "document of rank " + std::to_string(doc.source_rank) +
                    " has no tokens after preprocessing");
  }
  return doc;
}

namespace {

std::vector<ExtendedDocument> sorted_by_rank(
    std::vector<ExtendedDocument> docs) {
  std::sort(docs.begin(), docs.end(),
            [](const ExtendedDocument& a, const ExtendedDocument& b) {
              return a.source_rank < b.source_rank;
            });
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (i > 0 && docs[i].source_rank == docs[i - 1].source_rank) {
      throw Error(ErrorCode::kDuplicateRank,
                  "duplicate document rank " +
                      std::to_string(docs[i].source_rank));
    }
    if (docs[i].source_rank != static_cast<int>(i) + 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "document ranks must be contiguous from 1; missing rank " +
                      std::to_string(i + 1));
    }
  }
  return docs;
}

}  // namespace

Corpus build_extended_corpus(std::vector<ExtendedDocument> docs,
                             const TargetEntity& target) {
  Corpus corpus;
  corpus.documents = sorted_by_rank(std::move(docs));
  corpus.variant = CorpusVariant::kExtended;
  corpus.n = static_cast<int>(corpus.documents.size());
  corpus.target = target;
  return corpus;
}

Corpus build_enhanced_corpus(std::vector<ExtendedDocument> docs,
                             const TargetEntity& target) {
  std::vector<ExtendedDocument> ranked = sorted_by_rank(std::move(docs));
  const int n = static_cast<int>(ranked.size());
  Corpus corpus;
  corpus.documents.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (int i = 1; i <= n; ++i) {
    for (int copy = 0; copy < n + 1 - i; ++copy) {
      corpus.documents.push_back(ranked[i - 1]);
    }
  }
  corpus.variant = CorpusVariant::kEnhanced;
  corpus.n = n;
  corpus.target = target;
  return corpus;
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  for (const ExtendedDocument& doc : corpus.documents) {
    out += std::to_string(doc.source_rank);
    out.push_back('\t');
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      if (i > 0) out.push_back(' ');
      out += doc.tokens[i].text;
    }
    out.push_back('\n');
  }
  return out;
}

Corpus parse_corpus(std::string_view text, const TargetEntity& target) {
  Corpus corpus;
  corpus.target = target;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      throw Error(ErrorCode::kParse,
                  "corpus line " + std::to_string(line_no + 1) +
                      " is not newline-terminated");
    }
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    std::size_t tab = line.find('\t');
    int rank = 0;
    if (tab == std::string_view::npos ||
        std::from_chars(line.data(), line.data() + tab, rank).ptr !=
            line.data() + tab ||
        rank < 1) {
      throw Error(ErrorCode::kParse,
                  "corpus line " + std::to_string(line_no) +
                      " lacks a 'rank<TAB>' prefix");
    }
    ExtendedDocument doc;
    doc.source_rank = rank;
    std::string_view rest = line.substr(tab + 1);
    std::size_t p = 0;
    std::size_t position = 0;
    while (p <= rest.size() && !rest.empty()) {
      std::size_t sp = rest.find(' ', p);
      std::size_t end = sp == std::string_view::npos ? rest.size() : sp;
      if (end == p) {
        throw Error(ErrorCode::kParse,
                    "empty token on corpus line " + std::to_string(line_no));
      }
      doc.tokens.push_back(
          Token{std::string(rest.substr(p, end - p)), {}, position++});
      if (sp == std::string_view::npos) break;
      p = sp + 1;
    }
    corpus.documents.push_back(std::move(doc));
  }

  std::map<int, int> multiplicity;
  for (const ExtendedDocument& d : corpus.documents) {
    ++multiplicity[d.source_rank];
  }
  const int n = multiplicity.empty() ? 0 : multiplicity.rbegin()->first;
  bool contiguous = static_cast<int>(multiplicity.size()) == n;
  bool all_once = std::all_of(multiplicity.begin(), multiplicity.end(),
                              [](const auto& kv) { return kv.second == 1; });
  bool rank_weighted = std::all_of(
      multiplicity.begin(), multiplicity.end(),
      [n](const auto& kv) { return kv.second == n + 1 - kv.first; });
  if (!contiguous || (!all_once && !rank_weighted)) {
    throw Error(ErrorCode::kParse,
                "corpus ranks match neither the extended nor the enhanced "
                "layout");
  }
  corpus.variant = all_once ? CorpusVariant::kExtended
                            : CorpusVariant::kEnhanced;
  corpus.n = n;
  return corpus;
}

}  // namespace emergekg
