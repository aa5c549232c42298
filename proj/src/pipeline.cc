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

#include "emergekg/pipeline.h"

#include <functional>

#include <json.hpp>

#include "emergekg/entity2vec.h"
#include "emergekg/eval.h"
#include "emergekg/hash.h"
#include "emergekg/kgraph.h"
#include "emergekg/lexicon.h"
#include "emergekg/projection.h"
#include "emergekg/search.h"
#include "emergekg/typeinfer.h"

namespace emergekg {
namespace {

namespace fs = std::filesystem;

struct StageRecord {
  std::string name;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

class ArtifactWriter {
 public:
  ArtifactWriter(fs::path dir, PipelineResult& result) : dir_(std::move(dir)), result_(result) {}

  void write(const std::string& stage, const std::string& file, std::string_view content) {
    fs::path path = dir_ / file;
    write_file(path, content);
    result_.artifacts.push_back({stage, path, sha256_hex(content)});
  }

 private:
  fs::path dir_;
  PipelineResult& result_;
};

template <typename Fn>
auto run_stage(const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  }
}

std::string build_manifest(const PipelineConfig& cfg, const PipelineResult& result,
                           const std::vector<StageRecord>& stages) {
  nlohmann::ordered_json j;
  j["config_hash"] = result.config_hash;
  j["config"] = nlohmann::ordered_json::parse(canonical_config_json(cfg));
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const StageRecord& s : stages) {
    nlohmann::ordered_json entry;
    entry["name"] = s.name;
    entry["inputs"] = s.inputs;
    nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
    for (const std::string& file : s.outputs) {
      for (const Artifact& a : result.artifacts) {
        if (a.path.filename() == file) {
          outputs.push_back({{"file", file}, {"sha256", a.sha256}});
        }
      }
    }
    entry["outputs"] = std::move(outputs);
    list.push_back(std::move(entry));
  }
  j["stages"] = std::move(list);
  return j.dump(2) + "\n";
}

}  // namespace

std::unique_ptr<Recognizer> make_recognizer(const std::string& backend,
                                            const fs::path& data_dir) {
  if (backend == "heuristic") {
    return std::make_unique<HeuristicRecognizer>(Gazetteers::load(data_dir / "gazetteers"));
  }
  if (!fs::is_directory(backend)) {
    throw Error(ErrorCode::kConfig, "annotation directory not found: " + backend);
  }
  return std::make_unique<AnnotationRecognizer>(backend);
}

WordSet load_stopwords(const fs::path& data_dir) {
  return load_word_set(data_dir / "stopwords.txt", true);
}

Corpus prepare_corpus(std::vector<ExtendedDocument> docs, const TargetEntity& target,
                      const WordSet& stopwords, CorpusVariant variant) {
  for (ExtendedDocument& d : docs) d = preprocess(std::move(d), stopwords);
  return variant == CorpusVariant::kEnhanced ? build_enhanced_corpus(std::move(docs), target)
                                             : build_extended_corpus(std::move(docs), target);
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();

  // Everything that can be checked without doing work is checked here.
  std::unique_ptr<SearchClient> client;
  std::unique_ptr<PageFetcher> fetcher;
  if (cfg.fixture_dir) {
    if (!fs::is_directory(*cfg.fixture_dir)) {
      throw Error(ErrorCode::kConfig,
                  "fixture directory not found: " + cfg.fixture_dir->string());
    }
    client = std::make_unique<FixtureSearchClient>(*cfg.fixture_dir);
    fetcher = std::make_unique<FixturePageFetcher>(*cfg.fixture_dir);
  } else {
    client = make_live_search_client();
    fetcher = make_http_page_fetcher();
  }
  if (!fs::is_directory(cfg.data_dir)) {
    throw Error(ErrorCode::kConfig, "data directory not found: " + cfg.data_dir.string());
  }
  std::string annotations;
  if (cfg.recognizer == "heuristic") {
    annotations = "heuristic";
  } else if (cfg.annotations_dir) {
    annotations = cfg.annotations_dir->string();
  } else if (cfg.fixture_dir) {
    annotations = (*cfg.fixture_dir / "annotations").string();
  } else {
    throw Error(ErrorCode::kConfig, "the annotation recognizer needs annotations_dir");
  }
  WordSet stopwords;
  std::unique_ptr<Recognizer> recognizer;
  std::optional<Lexicon> lexicon;
  std::optional<GroundTruthCard> truth;
  try {
    stopwords = load_stopwords(cfg.data_dir);
    recognizer = make_recognizer(annotations, cfg.data_dir);
    lexicon = Lexicon::load(cfg.data_dir / "lexicon");
    if (cfg.truth_path) truth = parse_ground_truth_json(read_file(*cfg.truth_path));
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }

  const TargetEntity target = TargetEntity::from_surface(cfg.query, cfg.target_type);
  const int workers = cfg.hyper.workers;

  PipelineResult result;
  result.config_hash = config_hash(cfg);
  result.out_dir = cfg.cache_dir / result.config_hash;
  ArtifactWriter out(result.out_dir, result);
  std::vector<StageRecord> stages;

  std::vector<ExtendedDocument> docs = run_stage("fetch", [&] {
    std::vector<Snippet> snippets = fetch_snippets(cfg.query, cfg.n, *client);
    std::vector<ExtendedDocument> d = extend_snippets(snippets, *fetcher, workers);
    out.write("fetch", "documents.json", documents_to_json(d));
    return d;
  });
  stages.push_back({"fetch", {}, {"documents.json"}});

  struct CorpusStage {
    EntityInventory inventory;
    Corpus fused;
  };
  CorpusStage cs = run_stage("corpus", [&] {
    Corpus extended = prepare_corpus(docs, target, stopwords, CorpusVariant::kExtended);
    CorpusStage s;
    s.inventory = recognize_corpus(extended, *recognizer, workers);
    Corpus assoc = cfg.association_variant == CorpusVariant::kEnhanced
                       ? build_enhanced_corpus(extended.documents, target)
                       : std::move(extended);
    s.fused = transform_corpus(assoc, s.inventory);
    out.write("corpus", "corpus.txt", serialize_corpus(s.fused));
    out.write("corpus", "entities.json", inventory_to_json(s.inventory));
    return s;
  });
  stages.push_back({"corpus", {"fetch"}, {"corpus.txt", "entities.json"}});

  EmbeddingModel model = run_stage("train", [&] {
    EmbeddingModel mdl = train(cs.fused, cfg.hyper);
    out.write("train", "model.txt", serialize_model(mdl));
    return mdl;
  });
  stages.push_back({"train", {"corpus"}, {"model.txt"}});

  AssociationList assoc = run_stage("associate", [&] {
    AssociationList a = top_k_associated(model, target, cs.inventory, cfg.k);
    out.write("associate", "associations.json", associations_to_json(a));
    return a;
  });
  stages.push_back({"associate", {"train", "corpus"}, {"associations.json"}});

  TypeResult types = run_stage("type", [&] {
    Corpus typing = prepare_corpus(docs, target, stopwords, cfg.typing_variant);
    TypeResult t = entail_types(typing, cs.inventory, cfg.m, *lexicon, stopwords);
    out.write("type", "types.json", types_to_json(t));
    return t;
  });
  stages.push_back({"type", {"fetch", "corpus"}, {"types.json"}});

  run_stage("card", [&] {
    std::vector<Triple> triples = build_type_triples(target, types);
    std::vector<Triple> rel = build_association_triples(target, assoc);
    triples.insert(triples.end(), rel.begin(), rel.end());
    out.write("card", "card.ttl", serialize_turtle(triples));
    return 0;
  });
  stages.push_back({"card", {"associate", "type"}, {"card.ttl"}});

  run_stage("pca", [&] {
    Projection p = pca_project(collect_entity_vectors(model, cs.inventory, target));
    out.write("pca", "pca.csv", projection_to_csv(p));
    return 0;
  });
  stages.push_back({"pca", {"train", "corpus"}, {"pca.csv"}});

  if (truth) {
    run_stage("eval", [&] {
      out.write("eval", "eval.json", report_to_json(evaluate(assoc, *truth)));
      return 0;
    });
    stages.push_back({"eval", {"associate"}, {"eval.json"}});
  }

  write_file(result.out_dir / "manifest.json", build_manifest(cfg, result, stages));
  return result;
}

}  // namespace emergekg
