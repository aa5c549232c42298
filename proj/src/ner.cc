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

#include "emergekg/ner.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <set>
#include <thread>

#include "emergekg/error.h"
#include "emergekg/hash.h"
#include "json.hpp"

namespace emergekg {

using nlohmann::json;

namespace {

int type_priority(CoarseType t) {
  switch (t) {
    case CoarseType::kPerson: return 0;
    case CoarseType::kLocation: return 1;
    case CoarseType::kOrganization: return 2;
  }
  return 3;
}

bool is_word_char(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

bool is_capitalized(std::string_view word) {
  if (word.empty()) return false;
  auto c0 = static_cast<unsigned char>(word[0]);
  if (c0 >= 'A' && c0 <= 'Z') return true;
  // Latin-1 supplement capitals (U+00C0..U+00DE except U+00D7).
  if (c0 == 0xC3 && word.size() > 1) {
    auto c1 = static_cast<unsigned char>(word[1]);
    return c1 >= 0x80 && c1 <= 0x9E && c1 != 0x97;
  }
  return false;
}

// Words that may not start or continue a capitalized run even when
// capitalized (sentence-initial function words).
constexpr std::array<std::string_view, 36> kRunBreakers = {
    "a", "an", "and", "at", "by", "de", "del", "der", "for", "from",
    "in", "is", "it", "la", "of", "on", "or", "our", "the", "their",
    "this", "to", "van", "von", "we", "with", "my", "his", "her", "i",
    "am", "are", "as", "be", "was", "were"};

bool breaks_run(std::string_view word) {
  std::string lower = to_lower(word);
  return std::find(kRunBreakers.begin(), kRunBreakers.end(), lower) !=
         kRunBreakers.end();
}

constexpr std::array<std::string_view, 10> kLegalForms = {
    "Inc", "LLC", "Ltd", "Corp", "GmbH", "PLC", "AG", "SA", "LLP", "Co"};

bool is_legal_form(std::string_view word) {
  return std::find(kLegalForms.begin(), kLegalForms.end(), word) !=
         kLegalForms.end();
}

}  // namespace

EntityMention make_mention(const ExtendedDocument& doc, Span span,
                           CoarseType type) {
  if (span.end > doc.raw_text.size() || span.begin >= span.end) {
    throw Error(ErrorCode::kInvalidArgument,
                "mention span [" + std::to_string(span.begin) + "," +
                    std::to_string(span.end) + ") out of bounds for document " +
                    std::to_string(doc.source_rank));
  }
  EntityMention m;
  m.surface = doc.raw_text.substr(span.begin, span.size());
  m.coarse_type = type;
  m.doc_rank = doc.source_rank;
  m.span = span;
  m.fused = fuse_mention(m.surface);
  return m;
}

std::string defuse(std::string_view fused) {
  std::string out(fused);
  std::replace(out.begin(), out.end(), '#', ' ');
  return out;
}

bool EntityInventory::contains(std::string_view fused) const {
  return find(fused) != nullptr;
}

const EntityInfo* EntityInventory::find(std::string_view fused) const {
  auto it = distinct_entities.find(std::string(fused));
  return it == distinct_entities.end() ? nullptr : &it->second;
}

EntityInventory build_inventory(std::vector<EntityMention> mentions) {
  std::map<std::string, std::array<int, 3>> votes;
  for (const EntityMention& m : mentions) {
    if (m.fused.empty()) continue;
    ++votes[m.fused][type_priority(m.coarse_type)];
  }
  EntityInventory inv;
  for (const auto& [token, counts] : votes) {
    int best = 0;
    for (int t = 1; t < 3; ++t) {
      if (counts[t] > counts[best]) best = t;
    }
    static constexpr CoarseType kByPriority[] = {
        CoarseType::kPerson, CoarseType::kLocation, CoarseType::kOrganization};
    inv.distinct_entities[token] =
        EntityInfo{kByPriority[best], counts[0] + counts[1] + counts[2]};
  }
  std::erase_if(mentions, [](const EntityMention& m) { return m.fused.empty(); });
  inv.mentions = std::move(mentions);
  return inv;
}

std::string inventory_to_json(const EntityInventory& inventory) {
  json entities = json::array();
  for (const auto& [token, info] : inventory.distinct_entities) {
    entities.push_back({{"token", token},
                        {"type", coarse_type_name(info.coarse_type)},
                        {"count", info.mention_count}});
  }
  json mentions = json::array();
  for (const EntityMention& m : inventory.mentions) {
    mentions.push_back({{"surface", m.surface},
                        {"type", coarse_type_name(m.coarse_type)},
                        {"rank", m.doc_rank},
                        {"start", m.span.begin},
                        {"end", m.span.end}});
  }
  return json{{"entities", entities}, {"mentions", mentions}}.dump(2) + "\n";
}

EntityInventory parse_inventory_json(std::string_view text) {
  std::vector<EntityMention> mentions;
  try {
    json in = json::parse(text);
    for (const json& item : in.at("mentions")) {
      EntityMention m;
      m.surface = item.at("surface").get<std::string>();
      auto type = parse_coarse_type(item.at("type").get<std::string>());
      if (!type) throw Error(ErrorCode::kParse, "unknown entity type");
      m.coarse_type = *type;
      m.doc_rank = item.at("rank").get<int>();
      m.span = {item.at("start").get<std::size_t>(),
                item.at("end").get<std::size_t>()};
      m.fused = fuse_mention(m.surface);
      mentions.push_back(std::move(m));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("entity inventory: ") + e.what());
  }
  return build_inventory(std::move(mentions));
}

AnnotationRecognizer::AnnotationRecognizer(std::filesystem::path dir)
    : dir_(std::move(dir)) {}

std::vector<EntityMention> AnnotationRecognizer::recognize(
    const ExtendedDocument& doc) {
  std::filesystem::path file = dir_ / (url_key(doc.url) + ".json");
  if (!std::filesystem::exists(file)) {
    throw Error(ErrorCode::kMissingAnnotation,
                "no annotation file for document " +
                    std::to_string(doc.source_rank) + " (" + doc.url +
                    "), expected " + file.string());
  }
  std::vector<EntityMention> out;
  try {
    json in = json::parse(read_file(file));
    for (const json& item : in) {
      Span span{item.at("start").get<std::size_t>(),
                item.at("end").get<std::size_t>()};
      auto type = parse_coarse_type(item.at("type").get<std::string>());
      if (!type) {
        throw Error(ErrorCode::kParse,
                    "unknown entity type in " + file.string());
      }
      if (span.end > doc.raw_text.size() || span.begin >= span.end) {
        throw Error(ErrorCode::kParse,
                    "annotation span out of bounds in " + file.string());
      }
      out.push_back(make_mention(doc, span, *type));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, file.string() + ": " + e.what());
  }
  return out;
}

Gazetteers Gazetteers::load(const std::filesystem::path& dir) {
  Gazetteers g;
  g.given_names = load_word_set(dir / "person.txt", false);
  for (const std::string& line : read_lines(dir / "location.txt")) {
    g.locations.push_back(split_whitespace(line));
  }
  g.org_suffixes = load_word_set(dir / "org_suffix.txt", false);
  return g;
}

HeuristicRecognizer::HeuristicRecognizer(Gazetteers gazetteers)
    : gaz_(std::move(gazetteers)) {
  for (const auto& loc : gaz_.locations) {
    max_location_words_ = std::max(max_location_words_, loc.size());
  }
}

std::vector<EntityMention> HeuristicRecognizer::recognize(
    const ExtendedDocument& doc) {
  std::vector<Token> words = tokenize(doc.raw_text);
  std::vector<EntityMention> out;

  auto location_length = [&](std::size_t begin, std::size_t end) {
    for (std::size_t len = std::min(max_location_words_, end - begin); len > 0;
         --len) {
      for (const auto& loc : gaz_.locations) {
        if (loc.size() != len) continue;
        bool match = true;
        for (std::size_t k = 0; k < len && match; ++k) {
          match = words[begin + k].text == loc[k];
        }
        if (match) return len;
      }
    }
    return std::size_t{0};
  };
  auto special = [&](std::size_t k, std::size_t end) {
    return gaz_.org_suffixes.contains(words[k].text) ||
           location_length(k, end) > 0;
  };
  auto emit = [&](std::size_t first, std::size_t last, CoarseType type) {
    out.push_back(make_mention(
        doc, Span{words[first].span.begin, words[last].span.end}, type));
  };

  std::size_t i = 0;
  while (i < words.size()) {
    if (!is_capitalized(words[i].text) || breaks_run(words[i].text)) {
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    while (end < words.size() && words[end].position == words[end - 1].position + 1 &&
           is_capitalized(words[end].text) && !breaks_run(words[end].text)) {
      ++end;
    }
    // Segment the run [i, end).
    std::size_t j = i;
    std::size_t unclaimed_from = i;
    while (j < end) {
      if (std::size_t len = location_length(j, end); len > 0) {
        emit(j, j + len - 1, CoarseType::kLocation);
        j += len;
        unclaimed_from = j;
        continue;
      }
      const std::string& w = words[j].text;
      if (gaz_.org_suffixes.contains(w)) {
        std::size_t first = (is_legal_form(w) && unclaimed_from < j) ? unclaimed_from : j;
        emit(first, j, CoarseType::kOrganization);
        ++j;
        unclaimed_from = j;
        continue;
      }
      if (gaz_.given_names.contains(w) && j + 1 < end && !special(j + 1, end)) {
        std::size_t last = j + 1;
        if (gaz_.given_names.contains(words[last].text) && last + 1 < end &&
            !special(last + 1, end)) {
          ++last;
        }
        emit(j, last, CoarseType::kPerson);
        j = last + 1;
        unclaimed_from = j;
        continue;
      }
      ++j;
    }
    i = end;
  }
  return out;
}

std::vector<EntityMention> find_target_mentions(const ExtendedDocument& doc,
                                                const TargetEntity& target) {
  std::vector<std::string> words = split_whitespace(target.surface);
  std::vector<EntityMention> out;
  if (words.empty()) return out;
  const std::string& text = doc.raw_text;
  const CoarseType type = target.coarse_type_hint.value_or(CoarseType::kPerson);
  std::size_t from = 0;
  while (true) {
    std::size_t start = text.find(words[0], from);
    if (start == std::string::npos) break;
    from = start + 1;
    if (start > 0 && is_word_char(static_cast<unsigned char>(text[start - 1]))) {
      continue;
    }
    std::size_t p = start + words[0].size();
    bool ok = true;
    for (std::size_t k = 1; k < words.size() && ok; ++k) {
      std::size_t ws = p;
      while (p < text.size() && is_space(text[p])) ++p;
      ok = p > ws && text.compare(p, words[k].size(), words[k]) == 0;
      p += words[k].size();
    }
    if (!ok || p > text.size()) continue;
    if (p < text.size() && is_word_char(static_cast<unsigned char>(text[p]))) {
      continue;
    }
    out.push_back(make_mention(doc, Span{start, p}, type));
    from = p;
  }
  return out;
}

std::vector<EntityMention> resolve_overlaps(std::vector<EntityMention> mentions) {
  std::stable_sort(mentions.begin(), mentions.end(),
                   [](const EntityMention& a, const EntityMention& b) {
                     if (a.span.size() != b.span.size()) {
                       return a.span.size() > b.span.size();
                     }
                     return a.span.begin < b.span.begin;
                   });
  std::vector<EntityMention> kept;
  for (EntityMention& m : mentions) {
    bool clash = std::any_of(kept.begin(), kept.end(), [&](const EntityMention& k) {
      return k.doc_rank == m.doc_rank && k.span.overlaps(m.span);
    });
    if (!clash) kept.push_back(std::move(m));
  }
  std::sort(kept.begin(), kept.end(),
            [](const EntityMention& a, const EntityMention& b) {
              if (a.doc_rank != b.doc_rank) return a.doc_rank < b.doc_rank;
              return a.span.begin < b.span.begin;
            });
  return kept;
}

std::vector<EntityMention> recognize(const ExtendedDocument& doc,
                                     Recognizer& backend,
                                     const TargetEntity& target) {
  std::vector<EntityMention> forced = find_target_mentions(doc, target);
  std::vector<EntityMention> found = backend.recognize(doc);
  std::erase_if(found, [&](const EntityMention& m) {
    return std::any_of(forced.begin(), forced.end(), [&](const EntityMention& f) {
      return f.span.overlaps(m.span);
    });
  });
  found = resolve_overlaps(std::move(found));
  found.insert(found.end(), forced.begin(), forced.end());
  std::sort(found.begin(), found.end(),
            [](const EntityMention& a, const EntityMention& b) {
              return a.span.begin < b.span.begin;
            });
  return found;
}

EntityInventory recognize_corpus(const Corpus& corpus, Recognizer& backend,
                                 int workers) {
  std::vector<const ExtendedDocument*> distinct;
  std::set<int> seen;
  for (const ExtendedDocument& d : corpus.documents) {
    if (seen.insert(d.source_rank).second) distinct.push_back(&d);
  }
  std::vector<std::vector<EntityMention>> per_doc(distinct.size());
  std::vector<std::exception_ptr> errors(distinct.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < distinct.size(); i = next++) {
      try {
        per_doc[i] = recognize(*distinct[i], backend, corpus.target);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  int threads = std::clamp(workers, 1, std::max(1, static_cast<int>(distinct.size())));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<EntityMention> all;
  for (auto& v : per_doc) {
    all.insert(all.end(), std::make_move_iterator(v.begin()),
               std::make_move_iterator(v.end()));
  }
  return build_inventory(std::move(all));
}

Corpus transform_corpus(const Corpus& corpus, const EntityInventory& inventory) {
  std::map<int, std::vector<EntityMention>> by_rank;
  for (const EntityMention& m : inventory.mentions) by_rank[m.doc_rank].push_back(m);
  for (auto& [rank, ms] : by_rank) ms = resolve_overlaps(std::move(ms));

  Corpus out;
  out.variant = corpus.variant;
  out.n = corpus.n;
  out.target = corpus.target;
  out.documents.reserve(corpus.documents.size());
  for (const ExtendedDocument& doc : corpus.documents) {
    auto it = by_rank.find(doc.source_rank);
    if (it == by_rank.end()) {
      out.documents.push_back(doc);
      continue;
    }
    const std::vector<EntityMention>& ms = it->second;
    ExtendedDocument fused = doc;
    fused.tokens.clear();
    std::size_t mi = 0;
    bool emitted = false;
    auto emit = [&](std::size_t position) {
      if (!emitted) fused.tokens.push_back(Token{ms[mi].fused, ms[mi].span, position});
    };
    for (const Token& t : doc.tokens) {
      // A mention whose words were all filtered out is still emitted.
      while (mi < ms.size() && ms[mi].span.end <= t.span.begin) {
        emit(t.position);
        ++mi;
        emitted = false;
      }
      if (mi < ms.size() && ms[mi].span.overlaps(t.span)) {
        emit(t.position);
        emitted = true;
        continue;
      }
      fused.tokens.push_back(t);
    }
    const std::size_t tail = doc.tokens.empty() ? 0 : doc.tokens.back().position + 1;
    for (; mi < ms.size(); ++mi) {
      emit(tail);
      emitted = false;
    }
    out.documents.push_back(std::move(fused));
  }
  return out;
}

}  // namespace emergekg
