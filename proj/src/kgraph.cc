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

#include "emergekg/kgraph.h"

#include "emergekg/ner.h"

namespace emergekg {

std::string local_name(std::string_view surface_or_fused) {
  std::string name;
  for (const std::string& word : split_whitespace(defuse(surface_or_fused))) {
    if (!name.empty()) name.push_back('-');
    name += word;
  }
  return name;
}

std::string title_case(std::string_view term) {
  std::string out(term);
  bool word_start = true;
  for (char& c : out) {
    if (is_space(c) || c == '-') {
      word_start = true;
      continue;
    }
    if (word_start && c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    word_start = false;
  }
  return out;
}

std::string local_iri(std::string_view surface_or_fused) {
  return std::string(vocab::kLocal) + local_name(surface_or_fused);
}

std::string_view association_predicate(CoarseType type) {
  switch (type) {
    case CoarseType::kPerson: return vocab::kFoafKnows;
    case CoarseType::kLocation: return vocab::kSchemaLocation;
    case CoarseType::kOrganization: return vocab::kSchemaAffiliation;
  }
  return vocab::kFoafKnows;
}

std::vector<Triple> build_type_triples(const TargetEntity& target,
                                       const TypeResult& types) {
  std::vector<Triple> out;
  const std::string subject = local_iri(target.surface);
  for (const auto& [term, score] : types.types) {
    out.push_back({subject, std::string(vocab::kRdfType),
                   Term::iri(local_iri(title_case(term)))});
  }
  return out;
}

std::vector<Triple> build_association_triples(const TargetEntity& target,
                                              const AssociationList& associations) {
  std::vector<Triple> out;
  const std::string subject = local_iri(target.surface);
  for (const AssociationResult& r : associations.results) {
    out.push_back({subject, std::string(association_predicate(r.coarse_type)),
                   Term::iri(local_iri(r.entity))});
  }
  return out;
}

}  // namespace emergekg
