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

#ifndef EMERGEKG_TYPEINFER_H_
#define EMERGEKG_TYPEINFER_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "emergekg/corpus.h"
#include "emergekg/lexicon.h"
#include "emergekg/ner.h"

namespace emergekg {

// Removes from every document the tokens covered by a mention of that
// document, tokens equal (case-insensitively) to any word of any inventory
// mention or to a fused entity token, and stop-words. Surviving tokens keep
// their positions, so removals split noun-phrase runs.
Corpus prune_named_entities(const Corpus& corpus, const EntityInventory& inventory,
                            const WordSet& stopwords);

// Terms of one pruned document, in order of appearance. A maximal run of
// adjacent noun tokens forms one lowercase term; runs longer than one word
// also contribute their final word.
std::vector<std::string> extract_noun_phrases(const ExtendedDocument& pruned,
                                              const Lexicon& lexicon);

struct TermStats {
  std::string term;
  std::map<int, int> per_document_frequency;  // document index -> f_{t,d} > 0
  double tf = 0.0;     // sum_d log(1 + f_{t,d})
  int df = 0;
  double idf = 0.0;    // N / df
  double tfidf = 0.0;  // tf * idf
};

// Scores every term occurring in `documents` (one term sequence per
// document; N = documents.size()). Output is ordered by tfidf descending,
// ties by term.
std::vector<TermStats> score_terms(std::span<const std::vector<std::string>> documents);

struct TypeResult {
  std::vector<std::pair<std::string, double>> types;  // (term, tfidf)
  bool no_type = false;
};

// prune -> extract -> score -> top m.
TypeResult entail_types(const Corpus& corpus, const EntityInventory& inventory,
                        int m, const Lexicon& lexicon, const WordSet& stopwords);

std::string types_to_json(const TypeResult& result);
TypeResult parse_types_json(std::string_view json);

}  // namespace emergekg

#endif  // EMERGEKG_TYPEINFER_H_
