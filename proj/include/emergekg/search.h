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

#ifndef EMERGEKG_SEARCH_H_
#define EMERGEKG_SEARCH_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emergekg/corpus.h"

namespace emergekg {

class SearchClient {
 public:
  virtual ~SearchClient() = default;
  // Up to `n` results in rank order. Throws Error(kSearchClient) on transport
  // failure.
  virtual std::vector<Snippet> search(std::string_view query, int n) = 0;
};

class PageFetcher {
 public:
  virtual ~PageFetcher() = default;
  // Raw HTML of the page, or nullopt when it cannot be retrieved.
  virtual std::optional<std::string> fetch(std::string_view url) = 0;
};

// Fixture directory layout:
//   snippets/<query-slug>.json   JSON array of {"rank","title","body","url"}
//   pages/<url_key(url)>.html    page bodies
//   annotations/<url_key(url)>.json
class FixtureSearchClient : public SearchClient {
 public:
  explicit FixtureSearchClient(std::filesystem::path dir);
  std::vector<Snippet> search(std::string_view query, int n) override;

 private:
  std::filesystem::path dir_;
};

class FixturePageFetcher : public PageFetcher {
 public:
  explicit FixturePageFetcher(std::filesystem::path dir);
  std::optional<std::string> fetch(std::string_view url) override;

 private:
  std::filesystem::path dir_;
};

// Lowercase ASCII alphanumerics with '-' between words.
std::string query_slug(std::string_view query);

bool looks_like_url(std::string_view url);

std::vector<Snippet> parse_snippets_json(std::string_view json);
std::string snippets_to_json(std::span<const Snippet> snippets);

// Validated, rank-ordered results of at most n entries.
std::vector<Snippet> fetch_snippets(std::string_view query, int n,
                                    SearchClient& client);

ExtendedDocument extend_snippet(const Snippet& snippet, PageFetcher& fetcher);

// Extends every snippet; pages are fetched by up to `workers` threads. The
// output order follows the input order regardless of scheduling.
std::vector<ExtendedDocument> extend_snippets(std::span<const Snippet> snippets,
                                              PageFetcher& fetcher,
                                              int workers = 1);

// Extended documents as exchanged between the fetch and corpus stages.
std::string documents_to_json(std::span<const ExtendedDocument> docs);
std::vector<ExtendedDocument> parse_documents_json(std::string_view json);

// HTTP adapters; only available when built with EMERGEKG_LIVE_SEARCH.
// Credentials come from EMERGEKG_SEARCH_KEY and EMERGEKG_SEARCH_CX.
std::unique_ptr<SearchClient> make_live_search_client();
std::unique_ptr<PageFetcher> make_http_page_fetcher();

}  // namespace emergekg

#endif  // EMERGEKG_SEARCH_H_
