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

#ifndef EMERGEKG_NER_H_
#define EMERGEKG_NER_H_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emergekg/corpus.h"

namespace emergekg {

struct EntityMention {
  std::string surface;  // raw_text[span]
  CoarseType coarse_type = CoarseType::kPerson;
  int doc_rank = 0;
  Span span;
  std::string fused;  // fuse_mention(surface)

  friend bool operator==(const EntityMention&, const EntityMention&) = default;
};

EntityMention make_mention(const ExtendedDocument& doc, Span span,
                           CoarseType type);

// Inverse of fuse_mention up to whitespace normalization.
std::string defuse(std::string_view fused);

struct EntityInfo {
  CoarseType coarse_type = CoarseType::kPerson;
  int mention_count = 0;
};

struct EntityInventory {
  std::vector<EntityMention> mentions;
  // Keyed by fused token. The coarse type is the majority over mentions,
  // ties resolved PERSON > LOCATION > ORGANIZATION.
  std::map<std::string, EntityInfo> distinct_entities;

  bool contains(std::string_view fused) const;
  const EntityInfo* find(std::string_view fused) const;
};

EntityInventory build_inventory(std::vector<EntityMention> mentions);

std::string inventory_to_json(const EntityInventory& inventory);
EntityInventory parse_inventory_json(std::string_view json);

class Recognizer {
 public:
  virtual ~Recognizer() = default;
  virtual std::vector<EntityMention> recognize(const ExtendedDocument& doc) = 0;
};

// Reads precomputed mentions from <dir>/<url_key(doc.url)>.json, a JSON array
// of {"start": int, "end": int, "type": "PERSON|LOCATION|ORGANIZATION"} with
// byte offsets into raw_text.
class AnnotationRecognizer : public Recognizer {
 public:
  explicit AnnotationRecognizer(std::filesystem::path dir);
  std::vector<EntityMention> recognize(const ExtendedDocument& doc) override;

 private:
  std::filesystem::path dir_;
};

struct Gazetteers {
  WordSet given_names;
  // Place names, each split into words; multi-word names match greedily.
  std::vector<std::vector<std::string>> locations;
  WordSet org_suffixes;

  // Loads person.txt, location.txt and org_suffix.txt from `dir`.
  static Gazetteers load(const std::filesystem::path& dir);
};

// Capitalized-sequence detection backed by gazetteers. Within a run of
// capitalized words: known places become LOCATION, a given name plus the
// following word becomes PERSON, and an organization suffix word is an
// ORGANIZATION on its own (legal-form suffixes such as "Inc" or "LLC" also
// absorb the unclaimed capitalized words before them).
class HeuristicRecognizer : public Recognizer {
 public:
  explicit HeuristicRecognizer(Gazetteers gazetteers);
  std::vector<EntityMention> recognize(const ExtendedDocument& doc) override;

 private:
  Gazetteers gaz_;
  std::size_t max_location_words_ = 1;
};

// Exact occurrences of the target's words separated by whitespace runs,
// bounded by non-word characters.
std::vector<EntityMention> find_target_mentions(const ExtendedDocument& doc,
                                                const TargetEntity& target);

// Keeps a non-overlapping subset: longest span first, leftmost among equal
// lengths. Output is ordered by span start.
std::vector<EntityMention> resolve_overlaps(std::vector<EntityMention> mentions);

// Backend mentions merged with the force-recognized target mentions, which
// take precedence over anything they overlap.
std::vector<EntityMention> recognize(const ExtendedDocument& doc,
                                     Recognizer& backend,
                                     const TargetEntity& target);

// Runs `recognize` over the distinct documents of the corpus, using up to
// `workers` threads.
EntityInventory recognize_corpus(const Corpus& corpus, Recognizer& backend,
                                 int workers = 1);

// Replaces every mention's tokens with its fused token in every document,
// replicas included. Documents must carry token spans.
Corpus transform_corpus(const Corpus& corpus, const EntityInventory& inventory);

}  // namespace emergekg

#endif  // EMERGEKG_NER_H_
