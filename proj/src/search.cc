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

#include "emergekg/search.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

#include "emergekg/error.h"
#include "emergekg/hash.h"
#include "emergekg/html.h"
#include "json.hpp"

#ifdef EMERGEKG_LIVE_SEARCH
#include "httplib.h"
#endif

namespace emergekg {

using nlohmann::json;

FixtureSearchClient::FixtureSearchClient(std::filesystem::path dir)
    : dir_(std::move(dir)) {}

std::vector<Snippet> FixtureSearchClient::search(std::string_view query,
                                                 int n) {
  std::filesystem::path file = dir_ / "snippets" / (query_slug(query) + ".json");
  if (!std::filesystem::exists(file)) {
    throw Error(ErrorCode::kSearchClient,
                "no fixture for query '" + std::string(query) + "' at " +
                    file.string());
  }
  std::vector<Snippet> all = parse_snippets_json(read_file(file));
  std::sort(all.begin(), all.end(), [](const Snippet& a, const Snippet& b) {
    return a.rank < b.rank;
  });
  if (static_cast<int>(all.size()) > n) all.resize(static_cast<std::size_t>(n));
  return all;
}

FixturePageFetcher::FixturePageFetcher(std::filesystem::path dir)
    : dir_(std::move(dir)) {}

std::optional<std::string> FixturePageFetcher::fetch(std::string_view url) {
  std::filesystem::path file = dir_ / "pages" / (url_key(url) + ".html");
  std::error_code ec;
  if (!std::filesystem::is_regular_file(file, ec)) return std::nullopt;
  try {
    return read_file(file);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string query_slug(std::string_view query) {
  std::string slug;
  bool dash = false;
  for (char c : query) {
    bool alnum = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                 (c >= 'A' && c <= 'Z');
    if (alnum) {
      if (dash && !slug.empty()) slug.push_back('-');
      dash = false;
      slug.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
    } else {
      dash = true;
    }
  }
  return slug;
}

bool looks_like_url(std::string_view url) {
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos || scheme_end == 0) return false;
  std::string scheme = to_lower(url.substr(0, scheme_end));
  if (scheme != "http" && scheme != "https") return false;
  std::string_view rest = url.substr(scheme_end + 3);
  std::size_t host_end = rest.find_first_of("/?#");
  std::string_view host = rest.substr(0, host_end);
  return !host.empty() &&
         std::none_of(host.begin(), host.end(), [](char c) { return is_space(c); });
}

std::vector<Snippet> parse_snippets_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("snippet fixture: ") + e.what());
  }
  if (!doc.is_array()) {
    throw Error(ErrorCode::kParse, "snippet fixture must be a JSON array");
  }
  std::vector<Snippet> out;
  try {
    for (const json& item : doc) {
      Snippet s;
      s.rank = item.at("rank").get<int>();
      s.title = item.value("title", "");
      s.body = item.at("body").get<std::string>();
      s.url = item.at("url").get<std::string>();
      out.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("snippet fixture: ") + e.what());
  }
  return out;
}

std::string snippets_to_json(std::span<const Snippet> snippets) {
  json doc = json::array();
  for (const Snippet& s : snippets) {
    doc.push_back(
        {{"rank", s.rank}, {"title", s.title}, {"body", s.body}, {"url", s.url}});
  }
  return doc.dump(2) + "\n";
}

std::vector<Snippet> fetch_snippets(std::string_view query, int n,
                                    SearchClient& client) {
  if (n < 1) {
    throw Error(ErrorCode::kInvalidArgument, "snippet count must be >= 1");
  }
  std::vector<Snippet> results = client.search(query, n);
  if (results.empty()) {
    throw Error(ErrorCode::kEmptyResult,
                "search for '" + std::string(query) + "' returned no results");
  }
  std::sort(results.begin(), results.end(),
            [](const Snippet& a, const Snippet& b) { return a.rank < b.rank; });
  if (static_cast<int>(results.size()) > n) {
    results.resize(static_cast<std::size_t>(n));
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].rank != static_cast<int>(i) + 1) {
      throw Error(ErrorCode::kParse,
                  "search results for '" + std::string(query) +
                      "' are not ranked contiguously from 1");
    }
    if (trim(results[i].body).empty()) {
      throw Error(ErrorCode::kParse, "snippet of rank " +
                                         std::to_string(results[i].rank) +
                                         " has an empty body");
    }
  }
  return results;
}

ExtendedDocument extend_snippet(const Snippet& snippet, PageFetcher& fetcher) {
  if (!looks_like_url(snippet.url)) {
    throw Error(ErrorCode::kInvalidArgument,
                "snippet of rank " + std::to_string(snippet.rank) +
                    " has a malformed url '" + snippet.url + "'");
  }
  ExtendedDocument doc;
  doc.source_rank = snippet.rank;
  doc.url = snippet.url;
  doc.raw_text = snippet.body;
  std::optional<std::string> page = fetcher.fetch(snippet.url);
  if (!page) {
    doc.degraded = true;
    return doc;
  }
  std::string text = extract_visible_text(*page);
  if (!text.empty()) {
    doc.raw_text.push_back('\n');
    doc.raw_text += text;
  }
  return doc;
}

std::vector<ExtendedDocument> extend_snippets(std::span<const Snippet> snippets,
                                              PageFetcher& fetcher,
                                              int workers) {
  std::vector<ExtendedDocument> docs(snippets.size());
  std::vector<std::exception_ptr> errors(snippets.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < snippets.size(); i = next++) {
      try {
        docs[i] = extend_snippet(snippets[i], fetcher);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads =
      std::clamp(workers, 1, std::max(1, static_cast<int>(snippets.size())));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return docs;
}

std::string documents_to_json(std::span<const ExtendedDocument> docs) {
  json out = json::array();
  for (const ExtendedDocument& d : docs) {
    out.push_back({{"rank", d.source_rank},
                   {"url", d.url},
                   {"degraded", d.degraded},
                   {"raw_text", d.raw_text}});
  }
  return out.dump(2) + "\n";
}

std::vector<ExtendedDocument> parse_documents_json(std::string_view text) {
  std::vector<ExtendedDocument> docs;
  try {
    json in = json::parse(text);
    for (const json& item : in) {
      ExtendedDocument d;
      d.source_rank = item.at("rank").get<int>();
      d.url = item.at("url").get<std::string>();
      d.degraded = item.value("degraded", false);
      d.raw_text = item.at("raw_text").get<std::string>();
      docs.push_back(std::move(d));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("documents file: ") + e.what());
  }
  return docs;
}

#ifdef EMERGEKG_LIVE_SEARCH

namespace {

struct UrlParts {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

UrlParts split_url(std::string_view url) {
  std::size_t scheme_end = url.find("://");
  std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string_view::npos) {
    return {std::string(url), "/"};
  }
  return {std::string(url.substr(0, path_start)),
          std::string(url.substr(path_start))};
}

std::string env_or_throw(const char* name) {
  const char* value = std::getenv(name);
  if (value == nullptr || *value == '\0') {
    throw Error(ErrorCode::kConfig,
                std::string("live search requires ") + name + " to be set");
  }
  return value;
}

class LiveSearchClient : public SearchClient {
 public:
  LiveSearchClient()
      : key_(env_or_throw("EMERGEKG_SEARCH_KEY")),
        cx_(env_or_throw("EMERGEKG_SEARCH_CX")) {}

  std::vector<Snippet> search(std::string_view query, int n) override {
    httplib::Client client("https://www.googleapis.com");
    client.set_follow_location(true);
    std::vector<Snippet> out;
    // The JSON API pages results ten at a time.
    for (int start = 1; start <= n; start += 10) {
      httplib::Params params{{"key", key_},
                             {"cx", cx_},
                             {"q", std::string(query)},
                             {"num", std::to_string(std::min(10, n - start + 1))},
                             {"start", std::to_string(start)}};
      auto res = client.Get("/customsearch/v1", params, httplib::Headers{});
      if (!res || res->status != 200) {
        throw Error(ErrorCode::kSearchClient,
                    "search request for '" + std::string(query) + "' failed");
      }
      json body = json::parse(res->body, nullptr, false);
      if (body.is_discarded()) {
        throw Error(ErrorCode::kSearchClient,
                    "malformed search response for '" + std::string(query) + "'");
      }
      if (!body.contains("items")) break;
      for (const json& item : body["items"]) {
        Snippet s;
        s.rank = static_cast<int>(out.size()) + 1;
        s.title = item.value("title", "");
        s.body = item.value("snippet", "");
        s.url = item.value("link", "");
        out.push_back(std::move(s));
      }
    }
    return out;
  }

 private:
  std::string key_;
  std::string cx_;
};

class HttpPageFetcher : public PageFetcher {
 public:
  std::optional<std::string> fetch(std::string_view url) override {
    UrlParts parts = split_url(url);
    httplib::Client client(parts.origin);
    client.set_follow_location(true);
    client.set_connection_timeout(10);
    client.set_read_timeout(20);
    auto res = client.Get(parts.path);
    if (!res || res->status != 200) return std::nullopt;
    return res->body;
  }
};

}  // namespace

std::unique_ptr<SearchClient> make_live_search_client() {
  return std::make_unique<LiveSearchClient>();
}

std::unique_ptr<PageFetcher> make_http_page_fetcher() {
  return std::make_unique<HttpPageFetcher>();
}

#else

std::unique_ptr<SearchClient> make_live_search_client() {
  throw Error(ErrorCode::kConfig,
              "live search is not available in this build; rebuild with "
              "-DEMERGEKG_LIVE_SEARCH=ON");
}

std::unique_ptr<PageFetcher> make_http_page_fetcher() {
  throw Error(ErrorCode::kConfig,
              "http page fetching is not available in this build; rebuild "
              "with -DEMERGEKG_LIVE_SEARCH=ON");
}

#endif

}  // namespace emergekg
