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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "emergekg/error.h"
#include "emergekg/search.h"
#include "test_util.h"

namespace emergekg {
namespace {

namespace t = emergekg::testing;

WordSet stopwords() { return load_word_set(t::data_dir() / "stopwords.txt", true); }

std::vector<std::string> texts(const ExtendedDocument& d) {
  std::vector<std::string> out;
  for (const Token& tok : d.tokens) out.push_back(tok.text);
  return out;
}

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

std::vector<ExtendedDocument> ranked_docs(int n) {
  std::vector<ExtendedDocument> docs;
  for (int r = 1; r <= n; ++r) {
    docs.push_back(t::token_doc(r, {"doc" + std::to_string(r), "word"}));
  }
  return docs;
}

std::map<int, int> multiplicity(const Corpus& c) {
  std::map<int, int> m;
  for (const ExtendedDocument& d : c.documents) ++m[d.source_rank];
  return m;
}

TEST(Fetch, FixtureReturnsEightRankedSnippets) {
  FixtureSearchClient client(t::saeedeh_fixture());
  std::vector<Snippet> s = fetch_snippets("Saeedeh Shekarpour", 8, client);
  ASSERT_EQ(s.size(), 8u);
  for (int i = 0; i < 8; ++i) EXPECT_EQ(s[i].rank, i + 1);
}

TEST(Fetch, NOfOneReturnsTopSnippet) {
  FixtureSearchClient client(t::saeedeh_fixture());
  std::vector<Snippet> s = fetch_snippets("Saeedeh Shekarpour", 1, client);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].rank, 1);
}

TEST(Fetch, EmptyFixtureIsEmptyResult) {
  FixtureSearchClient client(t::data_dir() / "fixtures" / "empty");
  EXPECT_EQ(code_of([&] { fetch_snippets("zzqx-no-such-entity", 8, client); }),
            ErrorCode::kEmptyResult);
}

TEST(Fetch, MissingQueryFixtureIsClientError) {
  FixtureSearchClient client(t::saeedeh_fixture());
  EXPECT_EQ(code_of([&] { fetch_snippets("nobody at all", 8, client); }),
            ErrorCode::kSearchClient);
}

TEST(Extend, ReachablePageExtendsSnippet) {
  FixtureSearchClient client(t::saeedeh_fixture());
  FixturePageFetcher pages(t::saeedeh_fixture());
  std::vector<Snippet> s = fetch_snippets("Saeedeh Shekarpour", 8, client);
  ExtendedDocument d = extend_snippet(s[0], pages);
  EXPECT_FALSE(d.degraded);
  EXPECT_GT(d.raw_text.size(), s[0].body.size());
  EXPECT_NE(d.raw_text.find(s[0].body), std::string::npos);
  EXPECT_NE(d.raw_text.find("Assistant Professor"), std::string::npos);
}

TEST(Extend, UnreachablePageDegradesToBody) {
  FixtureSearchClient client(t::saeedeh_fixture());
  FixturePageFetcher pages(t::saeedeh_fixture());
  std::vector<Snippet> s = fetch_snippets("Saeedeh Shekarpour", 8, client);
  ExtendedDocument d = extend_snippet(s[7], pages);
  EXPECT_TRUE(d.degraded);
  EXPECT_EQ(d.raw_text, s[7].body);
}

TEST(Extend, ParallelMatchesSequential) {
  FixtureSearchClient client(t::saeedeh_fixture());
  FixturePageFetcher pages(t::saeedeh_fixture());
  std::vector<Snippet> s = fetch_snippets("Saeedeh Shekarpour", 8, client);
  EXPECT_EQ(documents_to_json(extend_snippets(s, pages, 1)),
            documents_to_json(extend_snippets(s, pages, 4)));
}

TEST(Preprocess, DropsStopwords) {
  ExtendedDocument d = preprocess(
      t::make_doc(1, "am founding CANAB: Cognitive ANalytics Lab in the University"),
      stopwords());
  std::vector<std::string> got = texts(d);
  for (const char* w : {"am", "in", "the"}) {
    EXPECT_EQ(std::count(got.begin(), got.end(), w), 0) << w;
  }
  EXPECT_EQ(got, (std::vector<std::string>{"founding", "CANAB", "Cognitive", "ANalytics",
                                           "Lab", "University"}));
}

TEST(Preprocess, AllDigitsIsEmptyDocument) {
  EXPECT_EQ(code_of([] { preprocess(t::make_doc(1, "2024 2025"), stopwords()); }),
            ErrorCode::kEmptyDocument);
}

TEST(Preprocess, StripsPunctuation) {
  ExtendedDocument d = preprocess(t::make_doc(1, "Hello, world!"), {});
  EXPECT_EQ(texts(d), (std::vector<std::string>{"Hello", "world"}));
}

TEST(Tokenize, KeepsFusionGlueAndIntraWordHyphens) {
  std::vector<Token> toks = tokenize("Saeedeh#Shekarpour met Axel-Cyrille - twice");
  std::vector<std::string> got;
  for (const Token& tok : toks) got.push_back(tok.text);
  EXPECT_EQ(got, (std::vector<std::string>{"Saeedeh#Shekarpour", "met", "Axel-Cyrille",
                                           "twice"}));
}

TEST(Tokenize, ClausePunctuationBreaksAdjacency) {
  std::vector<Token> toks = tokenize("alpha beta, gamma");
  ASSERT_EQ(toks.size(), 3u);
  EXPECT_EQ(toks[1].position, toks[0].position + 1);
  EXPECT_GT(toks[2].position, toks[1].position + 1);
}

// Random texts over a small alphabet with punctuation and whitespace.
std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {
      "the", "Lab", "of", "2024", "Dayton", ",", ".", " ", "  ", "\n", "a-b",
      "x#y", "!", "News", "in", ":", "42x", "students"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::string s = "start";
  for (int i = 0; i < 30; ++i) {
    s += pieces[pick(rng)];
    if (pick(rng) % 2 == 0) s += ' ';
  }
  return s;
}

TEST(PreprocessProperty, Idempotent) {
  std::mt19937_64 rng(11);
  WordSet sw = stopwords();
  for (int trial = 0; trial < 200; ++trial) {
    ExtendedDocument once = preprocess(t::make_doc(1, random_text(rng)), sw);
    ExtendedDocument twice = preprocess(once, sw);
    EXPECT_EQ(once.tokens, twice.tokens);
  }
}

TEST(PreprocessProperty, SpansMapBackIntoText) {
  std::mt19937_64 rng(12);
  WordSet sw = stopwords();
  for (int trial = 0; trial < 200; ++trial) {
    ExtendedDocument d = preprocess(t::make_doc(1, random_text(rng)), sw);
    for (const Token& tok : d.tokens) {
      ASSERT_LE(tok.span.end, d.raw_text.size());
      EXPECT_EQ(d.raw_text.substr(tok.span.begin, tok.span.size()), tok.text);
      EXPECT_FALSE(std::all_of(tok.text.begin(), tok.text.end(),
                               [](char c) { return c >= '0' && c <= '9'; }));
      EXPECT_FALSE(is_stopword(tok.text, sw));
    }
  }
}

TEST(ExtendedCorpus, OneDocumentPerRank) {
  Corpus c = build_extended_corpus(ranked_docs(8), TargetEntity::from_surface("X"));
  EXPECT_EQ(c.documents.size(), 8u);
  EXPECT_EQ(c.n, 8);
  EXPECT_EQ(c.variant, CorpusVariant::kExtended);
}

TEST(ExtendedCorpus, SingleDocumentMatchesEnhanced) {
  TargetEntity target = TargetEntity::from_surface("X");
  Corpus plus = build_extended_corpus(ranked_docs(1), target);
  Corpus star = build_enhanced_corpus(ranked_docs(1), target);
  EXPECT_EQ(serialize_corpus(plus), serialize_corpus(star));
}

TEST(ExtendedCorpus, DuplicateRankIsError) {
  std::vector<ExtendedDocument> docs = ranked_docs(4);
  docs[3].source_rank = 3;
  EXPECT_EQ(code_of([&] { build_extended_corpus(docs, TargetEntity::from_surface("X")); }),
            ErrorCode::kDuplicateRank);
}

TEST(EnhancedCorpus, TenRanksReplicateTopTenTimes) {
  Corpus c = build_enhanced_corpus(ranked_docs(10), TargetEntity::from_surface("X"));
  std::map<int, int> m = multiplicity(c);
  EXPECT_EQ(m[1], 10);
  EXPECT_EQ(m[10], 1);
  EXPECT_EQ(c.variant, CorpusVariant::kEnhanced);
}

TEST(EnhancedCorpus, WordCountIsWeightedSum) {
  std::vector<ExtendedDocument> docs = {
      t::token_doc(1, {"a", "b", "c", "d"}),
      t::token_doc(2, {"e", "f"}),
      t::token_doc(3, {"g", "h", "i"}),
  };
  // Independent expansion: rank i contributes (n + 1 - i) copies.
  std::size_t expected = 0;
  for (const ExtendedDocument& d : docs) {
    expected += static_cast<std::size_t>(3 + 1 - d.source_rank) * d.tokens.size();
  }
  ASSERT_EQ(expected, 3u * 4 + 2u * 2 + 1u * 3);
  Corpus c = build_enhanced_corpus(docs, TargetEntity::from_surface("X"));
  std::size_t words = 0;
  for (const ExtendedDocument& d : c.documents) words += d.tokens.size();
  EXPECT_EQ(words, expected);
}

TEST(EnhancedCorpusProperty, ExactMultiplicitiesUpToTwenty) {
  for (int n = 1; n <= 20; ++n) {
    Corpus c = build_enhanced_corpus(ranked_docs(n), TargetEntity::from_surface("X"));
    EXPECT_EQ(c.documents.size(), static_cast<std::size_t>(n * (n + 1) / 2));
    std::map<int, int> m = multiplicity(c);
    for (int i = 1; i <= n; ++i) EXPECT_EQ(m[i], n + 1 - i) << "n=" << n << " i=" << i;
  }
}

TEST(EnhancedCorpusProperty, ExtendedIsSubMultiset) {
  for (int n = 1; n <= 12; ++n) {
    TargetEntity target = TargetEntity::from_surface("X");
    std::map<int, int> plus = multiplicity(build_extended_corpus(ranked_docs(n), target));
    std::map<int, int> star = multiplicity(build_enhanced_corpus(ranked_docs(n), target));
    for (const auto& [rank, count] : plus) EXPECT_LE(count, star[rank]);
  }
}

TEST(CorpusCache, RoundTripIsBitExact) {
  WordSet sw = stopwords();
  std::vector<ExtendedDocument> docs;
  docs.push_back(preprocess(t::make_doc(1, "Saeedeh Shekarpour teaches at Dayton"), sw));
  docs.push_back(preprocess(t::make_doc(2, "Sören Auer, Bonn"), sw));
  TargetEntity target = TargetEntity::from_surface("Saeedeh Shekarpour");
  Corpus c = build_enhanced_corpus(docs, target);
  std::string text = serialize_corpus(c);
  Corpus back = parse_corpus(text, target);
  EXPECT_EQ(serialize_corpus(back), text);
  EXPECT_EQ(back.documents.size(), c.documents.size());
  EXPECT_EQ(back.variant, CorpusVariant::kEnhanced);
}

TEST(CorpusCache, MalformedLineIsParseError) {
  EXPECT_EQ(code_of([] { parse_corpus("no tab here\n", TargetEntity::from_surface("X")); }),
            ErrorCode::kParse);
}

TEST(Target, FusedTokenHasNoWhitespace) {
  TargetEntity t = TargetEntity::from_surface("  Saeedeh   Shekarpour ");
  EXPECT_EQ(t.fused_token, "Saeedeh#Shekarpour");
}

}  // namespace
}  // namespace emergekg
