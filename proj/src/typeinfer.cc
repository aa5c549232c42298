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

#include "emergekg/typeinfer.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "emergekg/error.h"
#include "json.hpp"

namespace emergekg {

using nlohmann::json;

Corpus prune_named_entities(const Corpus& corpus, const EntityInventory& inventory,
                            const WordSet& stopwords) {
  std::unordered_map<int, std::vector<Span>> spans_by_rank;
  WordSet entity_words;
  for (const EntityMention& m : inventory.mentions) {
    spans_by_rank[m.doc_rank].push_back(m.span);
    for (const Token& w : tokenize(m.surface)) entity_words.insert(to_lower(w.text));
  }
  for (const auto& [token, info] : inventory.distinct_entities) {
    entity_words.insert(to_lower(token));
  }

  Corpus out;
  out.variant = corpus.variant;
  out.n = corpus.n;
  out.target = corpus.target;
  out.documents.reserve(corpus.documents.size());
  for (const ExtendedDocument& doc : corpus.documents) {
    ExtendedDocument pruned = doc;
    pruned.tokens.clear();
    const std::vector<Span>* spans = nullptr;
    if (auto it = spans_by_rank.find(doc.source_rank); it != spans_by_rank.end()) {
      spans = &it->second;
    }
    for (const Token& t : doc.tokens) {
      if (is_stopword(t.text, stopwords)) continue;
      if (entity_words.contains(to_lower(t.text))) continue;
      if (spans != nullptr && t.span.size() > 0 &&
          std::any_of(spans->begin(), spans->end(),
                      [&](const Span& s) { return s.overlaps(t.span); })) {
        continue;
      }
      pruned.tokens.push_back(t);
    }
    out.documents.push_back(std::move(pruned));
  }
  return out;
}

std::vector<std::string> extract_noun_phrases(const ExtendedDocument& pruned,
                                              const Lexicon& lexicon) {
  std::vector<std::string> terms;
  std::vector<std::string> run;
  std::size_t last_position = 0;
  auto flush = [&] {
    if (run.empty()) return;
    std::string phrase;
    for (const std::string& w : run) {
      if (!phrase.empty()) phrase.push_back(' ');
      phrase += w;
    }
    terms.push_back(std::move(phrase));
    if (run.size() > 1) terms.push_back(run.back());
    run.clear();
  };
  for (const Token& t : pruned.tokens) {
    if (!lexicon.is_noun(t.text)) {
      flush();
      continue;
    }
    if (!run.empty() && t.position != last_position + 1) flush();
    run.push_back(to_lower(t.text));
    last_position = t.position;
  }
  flush();
  return terms;
}

std::vector<TermStats> score_terms(std::span<const std::vector<std::string>> documents) {
  std::map<std::string, TermStats> by_term;
  for (std::size_t d = 0; d < documents.size(); ++d) {
    for (const std::string& term : documents[d]) {
      TermStats& s = by_term[term];
      s.term = term;
      ++s.per_document_frequency[static_cast<int>(d)];
    }
  }
  const double n = static_cast<double>(documents.size());
  std::vector<TermStats> out;
  out.reserve(by_term.size());
  for (auto& [term, s] : by_term) {
    s.df = static_cast<int>(s.per_document_frequency.size());
    s.tf = 0.0;
    for (const auto& [doc, f] : s.per_document_frequency) {
      s.tf += std::log(1.0 + static_cast<double>(f));
    }
    s.idf = n / static_cast<double>(s.df);
    s.tfidf = s.tf * s.idf;
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const TermStats& a, const TermStats& b) {
    if (a.tfidf != b.tfidf) return a.tfidf > b.tfidf;
    return a.term < b.term;
  });
  return out;
}

TypeResult entail_types(const Corpus& corpus, const EntityInventory& inventory,
                        int m, const Lexicon& lexicon, const WordSet& stopwords) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be >= 1");
  Corpus pruned = prune_named_entities(corpus, inventory, stopwords);
  std::vector<std::vector<std::string>> terms;
  terms.reserve(pruned.documents.size());
  for (const ExtendedDocument& doc : pruned.documents) {
    terms.push_back(extract_noun_phrases(doc, lexicon));
  }
  std::vector<TermStats> scored = score_terms(terms);
  TypeResult result;
  for (std::size_t i = 0; i < scored.size() && i < static_cast<std::size_t>(m); ++i) {
    result.types.emplace_back(scored[i].term, scored[i].tfidf);
  }
  result.no_type = result.types.empty();
  return result;
}

std::string types_to_json(const TypeResult& result) {
  json types = json::array();
  for (const auto& [term, score] : result.types) {
    types.push_back({{"term", term}, {"score", score}});
  }
  return json{{"status", result.no_type ? "no_type_entailed" : "ok"}, {"types", types}}
             .dump(2) +
         "\n";
}

TypeResult parse_types_json(std::string_view text) {
  TypeResult result;
  try {
    json in = json::parse(text);
    for (const json& item : in.at("types")) {
      result.types.emplace_back(item.at("term").get<std::string>(),
                                item.at("score").get<double>());
    }
    result.no_type = result.types.empty();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("types: ") + e.what());
  }
  return result;
}

}  // namespace emergekg
