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

#ifndef EMERGEKG_CONFIG_H_
#define EMERGEKG_CONFIG_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "emergekg/corpus.h"
#include "emergekg/entity2vec.h"

namespace emergekg {

struct PipelineConfig {
  std::string query;
  std::optional<CoarseType> target_type;
  int n = 8;
  CorpusVariant association_variant = CorpusVariant::kEnhanced;
  CorpusVariant typing_variant = CorpusVariant::kExtended;
  int k = 10;
  int m = 3;
  Hyperparameters hyper;  // hyper.seed is the run seed
  // Offline mode when set; the live adapters are used otherwise.
  std::optional<std::filesystem::path> fixture_dir;
  std::filesystem::path cache_dir = "cache";
  std::filesystem::path data_dir;  // stopwords.txt, gazetteers/, lexicon/
  // "annotations" reads <annotations_dir or fixture_dir/annotations>;
  // "heuristic" uses the gazetteer backend.
  std::string recognizer = "annotations";
  std::optional<std::filesystem::path> annotations_dir;
  std::optional<std::filesystem::path> truth_path;

  // Throws Error(kConfig) for out-of-range fields.
  void validate() const;
};

// Applies the keys of a JSON object, or of a flat TOML document with an
// optional [hyperparameters] table, on top of `base`. Relative paths are
// resolved against `base_dir`. Unknown keys are rejected.
PipelineConfig apply_config_json(std::string_view json, PipelineConfig base,
                                 const std::filesystem::path& base_dir = {});
PipelineConfig apply_config_toml(std::string_view toml, PipelineConfig base,
                                 const std::filesystem::path& base_dir = {});

// Dispatches on the file extension (.json or .toml).
PipelineConfig load_config_file(const std::filesystem::path& path, PipelineConfig base);

// Canonical JSON of the fields that affect pipeline outputs (cache_dir is
// excluded).
std::string canonical_config_json(const PipelineConfig& cfg);

// First 16 hex digits of the SHA-256 of canonical_config_json.
std::string config_hash(const PipelineConfig& cfg);

}  // namespace emergekg

#endif  // EMERGEKG_CONFIG_H_
