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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "emergekg/error.h"
#include "emergekg/hash.h"
#include "test_util.h"

namespace emergekg {
namespace {

namespace t = emergekg::testing;

const char kSnippet[] =
    "Saeedeh Shekarpour Assistant Professor Department of Computer Science University of "
    "Dayton News and Opportunities am founding CANAB: Cognitive ANalytics Lab in the "
    "University of Dayton, looking for talented, hardworking and passionate students.";

HeuristicRecognizer heuristic() {
  return HeuristicRecognizer(Gazetteers::load(t::data_dir() / "gazetteers"));
}

bool has_mention(const std::vector<EntityMention>& ms, std::string_view surface,
                 CoarseType type) {
  return std::any_of(ms.begin(), ms.end(), [&](const EntityMention& m) {
    return m.surface == surface && m.coarse_type == type;
  });
}

std::vector<std::string> texts(const ExtendedDocument& d) {
  std::vector<std::string> out;
  for (const Token& tok : d.tokens) out.push_back(tok.text);
  return out;
}

Corpus corpus_of(std::vector<ExtendedDocument> docs, const TargetEntity& target,
                 CorpusVariant variant) {
  for (ExtendedDocument& d : docs) d = preprocess(std::move(d), {});
  return variant == CorpusVariant::kEnhanced ? build_enhanced_corpus(std::move(docs), target)
                                             : build_extended_corpus(std::move(docs), target);
}

TEST(Fuse, JoinsWordsWithHash) {
  EXPECT_EQ(fuse_mention("Saeedeh Shekarpour"), "Saeedeh#Shekarpour");
  EXPECT_EQ(fuse_mention("Germany"), "Germany");
  EXPECT_EQ(fuse_mention("University  of  Bonn"), "University#of#Bonn");
}

TEST(Fuse, DefuseInvertsFuse) {
  for (const char* s : {"Saeedeh Shekarpour", "Germany", " University \t of Bonn "}) {
    std::string fused = fuse_mention(s);
    EXPECT_EQ(fused.find_first_of(" \t\n"), std::string::npos);
    EXPECT_EQ(defuse(fused), normalize_whitespace(s));
  }
}

TEST(Heuristic, FindsSnippetEntities) {
  HeuristicRecognizer rec = heuristic();
  ExtendedDocument doc = t::make_doc(1, kSnippet);
  TargetEntity target = TargetEntity::from_surface("Saeedeh Shekarpour");
  std::vector<EntityMention> ms = recognize(doc, rec, target);
  EXPECT_TRUE(has_mention(ms, "Saeedeh Shekarpour", CoarseType::kPerson));
  EXPECT_TRUE(has_mention(ms, "Dayton", CoarseType::kLocation));
  EXPECT_TRUE(has_mention(ms, "University", CoarseType::kOrganization));
  for (const EntityMention& m : ms) {
    EXPECT_EQ(doc.raw_text.substr(m.span.begin, m.span.size()), m.surface);
  }
}

TEST(Heuristic, LowercaseTextHasNoMentions) {
  HeuristicRecognizer rec = heuristic();
  EXPECT_TRUE(rec.recognize(t::make_doc(1, "a lecturer in dayton met students in bonn"))
                  .empty());
}

TEST(Heuristic, LegalSuffixAbsorbsCapitalizedWords) {
  HeuristicRecognizer rec = heuristic();
  std::vector<EntityMention> ms = rec.recognize(t::make_doc(1, "she joined Acme Widgets Inc"));
  EXPECT_TRUE(has_mention(ms, "Acme Widgets Inc", CoarseType::kOrganization));
}

TEST(Annotations, PassesThroughThreeMentions) {
  std::filesystem::path dir = t::scratch_dir("ner_annotations");
  ExtendedDocument doc = t::make_doc(1, "Sören Auer met Jens Lehmann in Bonn.");
  write_file(dir / (url_key(doc.url) + ".json"),
             R"([{"start": 0, "end": 11, "type": "PERSON"},)"
             R"( {"start": 16, "end": 28, "type": "PERSON"},)"
             R"( {"start": 32, "end": 36, "type": "LOCATION"}])");
  AnnotationRecognizer rec(dir);
  std::vector<EntityMention> ms = rec.recognize(doc);
  ASSERT_EQ(ms.size(), 3u);
  EXPECT_EQ(ms[0].surface, "Sören Auer");
  EXPECT_EQ(ms[0].fused, "Sören#Auer");
  EXPECT_EQ(ms[1].surface, "Jens Lehmann");
  EXPECT_EQ(ms[2].surface, "Bonn");
  EXPECT_EQ(ms[2].coarse_type, CoarseType::kLocation);
}

TEST(Annotations, MissingFileIsError) {
  AnnotationRecognizer rec(t::scratch_dir("ner_no_annotations"));
  try {
    rec.recognize(t::make_doc(1, "Bonn"));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingAnnotation);
  }
}

TEST(Annotations, OutOfBoundsSpanIsParseError) {
  std::filesystem::path dir = t::scratch_dir("ner_bad_annotations");
  ExtendedDocument doc = t::make_doc(1, "Bonn");
  write_file(dir / (url_key(doc.url) + ".json"), R"([{"start": 0, "end": 40, "type": "LOCATION"}])");
  AnnotationRecognizer rec(dir);
  try {
    rec.recognize(doc);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
}

TEST(Overlaps, LongestFirstThenLeftmost) {
  ExtendedDocument doc = t::make_doc(1, "University of Bonn Germany");
  std::vector<EntityMention> ms = resolve_overlaps({
      make_mention(doc, {14, 18}, CoarseType::kLocation),
      make_mention(doc, {0, 18}, CoarseType::kOrganization),
      make_mention(doc, {19, 26}, CoarseType::kLocation),
  });
  ASSERT_EQ(ms.size(), 2u);
  EXPECT_EQ(ms[0].surface, "University of Bonn");
  EXPECT_EQ(ms[1].surface, "Germany");
}

TEST(Overlaps, TargetWinsOverBackend) {
  std::filesystem::path dir = t::scratch_dir("ner_target_wins");
  ExtendedDocument doc = t::make_doc(1, "Saeedeh Shekarpour teaches");
  write_file(dir / (url_key(doc.url) + ".json"), R"([{"start": 8, "end": 18, "type": "LOCATION"}])");
  AnnotationRecognizer rec(dir);
  std::vector<EntityMention> ms =
      recognize(doc, rec, TargetEntity::from_surface("Saeedeh Shekarpour"));
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms[0].fused, "Saeedeh#Shekarpour");
}

TEST(Inventory, MajorityVoteThenFixedTieOrder) {
  ExtendedDocument doc = t::make_doc(1, "Dayton Dayton Dayton Bonn Bonn");
  EntityInventory inv = build_inventory({
      make_mention(doc, {0, 6}, CoarseType::kOrganization),
      make_mention(doc, {7, 13}, CoarseType::kLocation),
      make_mention(doc, {14, 20}, CoarseType::kOrganization),
      make_mention(doc, {21, 25}, CoarseType::kOrganization),
      make_mention(doc, {26, 30}, CoarseType::kLocation),
  });
  EXPECT_EQ(inv.find("Dayton")->coarse_type, CoarseType::kOrganization);
  EXPECT_EQ(inv.find("Dayton")->mention_count, 3);
  EXPECT_EQ(inv.find("Bonn")->coarse_type, CoarseType::kLocation);
}

TEST(InventoryProperty, TypeIndependentOfMentionOrder) {
  ExtendedDocument doc = t::make_doc(1, "Bonn Bonn Bonn Bonn Bonn Bonn");
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<EntityMention> ms;
    for (std::size_t i = 0; i < 6; ++i) {
      ms.push_back(make_mention(doc, {i * 5, i * 5 + 4}, static_cast<CoarseType>(pick(rng))));
    }
    const EntityInfo expected = *build_inventory(ms).find("Bonn");
    std::shuffle(ms.begin(), ms.end(), rng);
    const EntityInfo got = *build_inventory(ms).find("Bonn");
    EXPECT_EQ(got.coarse_type, expected.coarse_type);
    EXPECT_EQ(got.mention_count, expected.mention_count);
  }
}

TEST(Inventory, JsonRoundTrip) {
  ExtendedDocument doc = t::make_doc(2, "Sören Auer in Bonn");
  EntityInventory inv = build_inventory({make_mention(doc, {0, 11}, CoarseType::kPerson),
                                         make_mention(doc, {15, 19}, CoarseType::kLocation)});
  std::string json = inventory_to_json(inv);
  EXPECT_EQ(inventory_to_json(parse_inventory_json(json)), json);
}

TEST(Transform, FusesTargetMentions) {
  TargetEntity target = TargetEntity::from_surface("Saeedeh Shekarpour");
  Corpus c = corpus_of({t::make_doc(1, "Dr. Saeedeh Shekarpour is here")}, target,
                       CorpusVariant::kExtended);
  HeuristicRecognizer rec = heuristic();
  EntityInventory inv = recognize_corpus(c, rec);
  Corpus fused = transform_corpus(c, inv);
  std::vector<std::string> toks = texts(fused.documents[0]);
  EXPECT_NE(std::find(toks.begin(), toks.end(), "Saeedeh#Shekarpour"), toks.end());
  EXPECT_EQ(std::find(toks.begin(), toks.end(), "Saeedeh"), toks.end());
  EXPECT_EQ(std::find(toks.begin(), toks.end(), "Shekarpour"), toks.end());
}

TEST(Transform, NoMentionsIsIdentity) {
  TargetEntity target = TargetEntity::from_surface("Nobody Here");
  Corpus c = corpus_of({t::make_doc(1, "plain lowercase words"), t::make_doc(2, "more words")},
                       target, CorpusVariant::kEnhanced);
  Corpus fused = transform_corpus(c, EntityInventory{});
  EXPECT_EQ(serialize_corpus(fused), serialize_corpus(c));
  EXPECT_EQ(fused.variant, c.variant);
}

TEST(Transform, ReplicasScaleFusedCounts) {
  TargetEntity target = TargetEntity::from_surface("Saeedeh Shekarpour");
  Corpus c = corpus_of({t::make_doc(1, "Saeedeh Shekarpour and Saeedeh Shekarpour in Bonn"),
                        t::make_doc(2, "Bonn"), t::make_doc(3, "Dayton")},
                       target, CorpusVariant::kEnhanced);
  HeuristicRecognizer rec = heuristic();
  Corpus fused = transform_corpus(c, recognize_corpus(c, rec));
  auto fused_count = [](const ExtendedDocument& d) {
    return std::count_if(d.tokens.begin(), d.tokens.end(),
                         [](const Token& tok) { return tok.text.find('#') != std::string::npos; });
  };
  long one = 0;
  long all = 0;
  for (const ExtendedDocument& d : fused.documents) {
    if (d.source_rank != 1) continue;
    one = fused_count(d);
    all += fused_count(d);
  }
  EXPECT_EQ(one, 2);
  EXPECT_EQ(all, 3 * one);
}

TEST(TransformProperty, DefuseAndRetokenizeRecoversTokens) {
  static const std::vector<std::string> words = {"Sören", "Auer", "met", "Jens", "Lehmann",
                                                 "in", "Bonn", "news", "Saeedeh",
                                                 "Shekarpour"};
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  TargetEntity target = TargetEntity::from_surface("Saeedeh Shekarpour");
  HeuristicRecognizer rec = heuristic();
  for (int trial = 0; trial < 100; ++trial) {
    std::string text;
    for (int i = 0; i < 12; ++i) text += (i ? " " : "") + words[pick(rng)];
    Corpus c = corpus_of({t::make_doc(1, text)}, target, CorpusVariant::kExtended);
    Corpus fused = transform_corpus(c, recognize_corpus(c, rec));
    std::vector<std::string> recovered;
    for (const Token& tok : fused.documents[0].tokens) {
      for (const std::string& w : split_whitespace(defuse(tok.text))) recovered.push_back(w);
    }
    EXPECT_EQ(recovered, texts(c.documents[0])) << text;
    EXPECT_EQ(fused.documents.size(), c.documents.size());
  }
}

TEST(RecognizeCorpus, WorkersDoNotChangeInventory) {
  std::vector<ExtendedDocument> docs;
  for (int r = 1; r <= 6; ++r) {
    docs.push_back(t::make_doc(r, "Saeedeh Shekarpour visited Bonn and Dayton with Jens Lehmann"));
  }
  TargetEntity target = TargetEntity::from_surface("Saeedeh Shekarpour");
  Corpus c = corpus_of(docs, target, CorpusVariant::kExtended);
  HeuristicRecognizer rec = heuristic();
  EXPECT_EQ(inventory_to_json(recognize_corpus(c, rec, 1)),
            inventory_to_json(recognize_corpus(c, rec, 4)));
}

}  // namespace
}  // namespace emergekg
