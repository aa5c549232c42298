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

#include "emergekg/config.h"

#include <charconv>

#include <json.hpp>

#include "emergekg/error.h"
#include "emergekg/hash.h"
#include "emergekg/text.h"

namespace emergekg {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::kConfig, what);
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) path = base / path;
  return path.lexically_normal();
}

template <typename T>
T get_as(const json& value, std::string_view key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    config_error("config key '" + std::string(key) + "' has the wrong type");
  }
}

void apply_hyper(const json& obj, Hyperparameters& h) {
  if (!obj.is_object()) config_error("'hyperparameters' must be a table");
  for (const auto& [key, value] : obj.items()) {
    if (key == "window") h.window = get_as<int>(value, key);
    else if (key == "min_count") h.min_count = get_as<int>(value, key);
    else if (key == "workers") h.workers = get_as<int>(value, key);
    else if (key == "dims") h.dims = get_as<int>(value, key);
    else if (key == "batch_words") h.batch_words = get_as<int>(value, key);
    else if (key == "skip_gram") h.skip_gram = get_as<bool>(value, key);
    else if (key == "negative_samples") h.negative_samples = get_as<int>(value, key);
    else if (key == "epochs") h.epochs = get_as<int>(value, key);
    else if (key == "initial_learning_rate") h.initial_learning_rate = get_as<double>(value, key);
    else if (key == "subsample_threshold") h.subsample_threshold = get_as<double>(value, key);
    else if (key == "seed") h.seed = get_as<std::uint64_t>(value, key);
    else config_error("unknown hyperparameter '" + key + "'");
  }
}

CorpusVariant variant_of(const json& value, std::string_view key) {
  try {
    return parse_corpus_variant(get_as<std::string>(value, key));
  } catch (const Error& e) {
    config_error(e.what());
  }
}

PipelineConfig apply_object(const json& obj, PipelineConfig cfg,
                            const std::filesystem::path& base) {
  if (!obj.is_object()) config_error("config must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (key == "query") {
      cfg.query = get_as<std::string>(value, key);
    } else if (key == "target_type") {
      auto t = parse_coarse_type(get_as<std::string>(value, key));
      if (!t) config_error("target_type must be PERSON, LOCATION or ORGANIZATION");
      cfg.target_type = t;
    } else if (key == "n") {
      cfg.n = get_as<int>(value, key);
    } else if (key == "k") {
      cfg.k = get_as<int>(value, key);
    } else if (key == "m") {
      cfg.m = get_as<int>(value, key);
    } else if (key == "corpus_variant") {
      cfg.association_variant = variant_of(value, key);
    } else if (key == "typing_variant") {
      cfg.typing_variant = variant_of(value, key);
    } else if (key == "seed") {
      cfg.hyper.seed = get_as<std::uint64_t>(value, key);
    } else if (key == "fixture_dir") {
      cfg.fixture_dir = resolve(base, get_as<std::string>(value, key));
    } else if (key == "cache_dir") {
      cfg.cache_dir = resolve(base, get_as<std::string>(value, key));
    } else if (key == "data_dir") {
      cfg.data_dir = resolve(base, get_as<std::string>(value, key));
    } else if (key == "recognizer") {
      cfg.recognizer = get_as<std::string>(value, key);
    } else if (key == "annotations_dir") {
      cfg.annotations_dir = resolve(base, get_as<std::string>(value, key));
    } else if (key == "truth") {
      cfg.truth_path = resolve(base, get_as<std::string>(value, key));
    } else if (key == "hyperparameters") {
      apply_hyper(value, cfg.hyper);
    } else {
      config_error("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

json parse_toml_value(std::string_view raw, std::size_t line) {
  auto fail = [line](const std::string& what) -> json {
    config_error("toml line " + std::to_string(line) + ": " + what);
  };
  std::string_view v = trim(raw);
  if (v.empty()) return fail("missing value");
  if (v.front() == '"') {
    std::string out;
    std::size_t i = 1;
    for (; i < v.size() && v[i] != '"'; ++i) {
      if (v[i] == '\\' && i + 1 < v.size()) {
        char e = v[++i];
        out.push_back(e == 'n' ? '\n' : e == 't' ? '\t' : e);
      } else {
        out.push_back(v[i]);
      }
    }
    if (i >= v.size()) return fail("unterminated string");
    std::string_view rest = trim(v.substr(i + 1));
    if (!rest.empty() && rest.front() != '#') return fail("trailing characters");
    return out;
  }
  if (std::size_t hash = v.find('#'); hash != std::string_view::npos) {
    v = trim(v.substr(0, hash));
  }
  if (v == "true") return true;
  if (v == "false") return false;
  std::int64_t i = 0;
  auto [ip, iec] = std::from_chars(v.data(), v.data() + v.size(), i);
  if (iec == std::errc() && ip == v.data() + v.size()) return i;
  double d = 0.0;
  auto [dp, dec] = std::from_chars(v.data(), v.data() + v.size(), d);
  if (dec == std::errc() && dp == v.data() + v.size()) return d;
  return fail("unsupported value '" + std::string(v) + "'");
}

json toml_to_json(std::string_view toml) {
  json root = json::object();
  json* table = &root;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= toml.size()) {
    std::size_t nl = toml.find('\n', pos);
    if (nl == std::string_view::npos) nl = toml.size();
    std::string_view line = trim(toml.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      std::size_t close = line.find(']');
      if (close == std::string_view::npos) {
        config_error("toml line " + std::to_string(line_no) + ": bad table header");
      }
      std::string name(trim(line.substr(1, close - 1)));
      table = &root[name];
      if (!table->is_object()) *table = json::object();
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      config_error("toml line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key(trim(line.substr(0, eq)));
    (*table)[key] = parse_toml_value(line.substr(eq + 1), line_no);
  }
  return root;
}

std::string path_string(const std::optional<std::filesystem::path>& p) {
  return p ? p->lexically_normal().generic_string() : std::string();
}

}  // namespace

void PipelineConfig::validate() const {
  if (trim(query).empty()) config_error("query must not be empty");
  if (n < 1) config_error("n must be >= 1");
  if (k < 1) config_error("k must be >= 1");
  if (m < 1) config_error("m must be >= 1");
  if (recognizer != "annotations" && recognizer != "heuristic") {
    config_error("recognizer must be 'annotations' or 'heuristic'");
  }
  try {
    hyper.validate();
  } catch (const Error& e) {
    config_error(e.what());
  }
}

PipelineConfig apply_config_json(std::string_view text, PipelineConfig base,
                                 const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    config_error(std::string("config is not valid JSON: ") + e.what());
  }
  return apply_object(j, std::move(base), base_dir);
}

PipelineConfig apply_config_toml(std::string_view toml, PipelineConfig base,
                                 const std::filesystem::path& base_dir) {
  return apply_object(toml_to_json(toml), std::move(base), base_dir);
}

PipelineConfig load_config_file(const std::filesystem::path& path, PipelineConfig base) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    config_error(e.what());
  }
  const std::filesystem::path dir = path.parent_path();
  const std::string ext = to_lower(path.extension().string());
  if (ext == ".json") return apply_config_json(text, std::move(base), dir);
  if (ext == ".toml") return apply_config_toml(text, std::move(base), dir);
  config_error("config file must end in .json or .toml: " + path.string());
}

std::string canonical_config_json(const PipelineConfig& cfg) {
  const Hyperparameters& h = cfg.hyper;
  json j = {
      {"query", normalize_whitespace(cfg.query)},
      {"target_type", cfg.target_type ? std::string(coarse_type_name(*cfg.target_type)) : ""},
      {"n", cfg.n},
      {"k", cfg.k},
      {"m", cfg.m},
      {"corpus_variant", corpus_variant_name(cfg.association_variant)},
      {"typing_variant", corpus_variant_name(cfg.typing_variant)},
      {"fixture_dir", path_string(cfg.fixture_dir)},
      {"data_dir", cfg.data_dir.lexically_normal().generic_string()},
      {"recognizer", cfg.recognizer},
      {"annotations_dir", path_string(cfg.annotations_dir)},
      {"truth", path_string(cfg.truth_path)},
      {"hyperparameters",
       {{"window", h.window},
        {"min_count", h.min_count},
        {"workers", h.workers},
        {"dims", h.dims},
        {"batch_words", h.batch_words},
        {"skip_gram", h.skip_gram},
        {"negative_samples", h.negative_samples},
        {"epochs", h.epochs},
        {"initial_learning_rate", h.initial_learning_rate},
        {"subsample_threshold", h.subsample_threshold},
        {"seed", h.seed}}},
  };
  return j.dump();
}

std::string config_hash(const PipelineConfig& cfg) {
  return sha256_hex(canonical_config_json(cfg)).substr(0, 16);
}

}  // namespace emergekg
