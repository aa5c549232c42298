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

#ifndef EMERGEKG_PIPELINE_H_
#define EMERGEKG_PIPELINE_H_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "emergekg/config.h"
#include "emergekg/corpus.h"
#include "emergekg/error.h"
#include "emergekg/ner.h"

namespace emergekg {

// A failure inside a named pipeline stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.code(), "stage '" + stage + "': " + cause.what()),
        stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct Artifact {
  std::string stage;
  std::filesystem::path path;
  std::string sha256;
};

struct PipelineResult {
  std::string config_hash;
  std::filesystem::path out_dir;  // cache_dir / config_hash
  std::vector<Artifact> artifacts;
};

// "heuristic" selects the gazetteer backend under data_dir/gazetteers;
// anything else is an annotation directory.
std::unique_ptr<Recognizer> make_recognizer(const std::string& backend,
                                            const std::filesystem::path& data_dir);

WordSet load_stopwords(const std::filesystem::path& data_dir);

// Preprocesses the documents and builds the requested corpus variant.
Corpus prepare_corpus(std::vector<ExtendedDocument> docs, const TargetEntity& target,
                      const WordSet& stopwords, CorpusVariant variant);

// fetch -> corpus -> train -> associate -> type -> card -> pca [-> eval].
// Writes <stage>.<ext> files and manifest.json under cache_dir/<hash>.
// Configuration problems throw Error(kConfig) before any stage runs; stage
// failures throw StageError and leave earlier outputs in place.
PipelineResult run_pipeline(const PipelineConfig& cfg);

}  // namespace emergekg

#endif  // EMERGEKG_PIPELINE_H_
