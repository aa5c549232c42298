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

#ifndef EMERGEKG_KGRAPH_H_
#define EMERGEKG_KGRAPH_H_

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emergekg/corpus.h"
#include "emergekg/entity2vec.h"
#include "emergekg/typeinfer.h"

namespace emergekg {

namespace vocab {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kFoaf = "http://xmlns.com/foaf/0.1/";
inline constexpr std::string_view kSchema = "https://schema.org/";
inline constexpr std::string_view kLocal = "http://emergekg.local/resource/";
inline constexpr std::string_view kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kFoafKnows = "http://xmlns.com/foaf/0.1/knows";
inline constexpr std::string_view kSchemaLocation = "https://schema.org/location";
inline constexpr std::string_view kSchemaAffiliation = "https://schema.org/affiliation";
}  // namespace vocab

struct Term {
  enum class Kind { kIri, kLiteral };
  Kind kind = Kind::kIri;
  std::string value;  // absolute IRI or literal lexical form

  static Term iri(std::string value) { return {Kind::kIri, std::move(value)}; }
  static Term literal(std::string value) { return {Kind::kLiteral, std::move(value)}; }
  friend auto operator<=>(const Term&, const Term&) = default;
};

// All IRIs are stored absolute.
struct Triple {
  std::string subject;
  std::string predicate;
  Term object;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// "Saeedeh Shekarpour" and "Saeedeh#Shekarpour" -> "Saeedeh-Shekarpour".
std::string local_name(std::string_view surface_or_fused);

// Uppercases the first letter of every word.
std::string title_case(std::string_view term);

std::string local_iri(std::string_view surface_or_fused);

// The generic relation for an associated entity of the given coarse type.
std::string_view association_predicate(CoarseType type);

std::vector<Triple> build_type_triples(const TargetEntity& target,
                                       const TypeResult& types);
std::vector<Triple> build_association_triples(const TargetEntity& target,
                                              const AssociationList& associations);

// Turtle with rdf, foaf, schema and local prefixes; rdf:type statements
// first, then the rest, each group sorted. UTF-8, LF line endings.
std::string serialize_turtle(std::span<const Triple> triples);

// Reads the Turtle subset the serializer produces plus ';' and ','
// abbreviations, the 'a' keyword, comments, and PREFIX/@prefix directives.
std::vector<Triple> parse_turtle(std::string_view text);

}  // namespace emergekg

#endif  // EMERGEKG_KGRAPH_H_
