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

// emergekg command-line front end.
//
// Every subcommand accepts --config <file.json|file.toml>; explicit flags
// override values from the file. Exit codes: 0 success, 1 user or
// configuration error, 2 pipeline failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "emergekg/config.h"
#include "emergekg/entity2vec.h"
#include "emergekg/error.h"
#include "emergekg/eval.h"
#include "emergekg/kgraph.h"
#include "emergekg/lexicon.h"
#include "emergekg/ner.h"
#include "emergekg/pipeline.h"
#include "emergekg/projection.h"
#include "emergekg/search.h"
#include "emergekg/text.h"
#include "emergekg/typeinfer.h"

namespace {

namespace fs = std::filesystem;
using namespace emergekg;

constexpr int kExitUser = 1;
constexpr int kExitPipeline = 2;

// Flags shared by the subcommands. Unset optionals leave the config value.
struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> query;
  std::optional<std::string> target_type;
  std::optional<int> n;
  std::optional<int> k;
  std::optional<int> m;
  std::optional<std::string> variant;
  std::optional<std::string> fixtures;
  std::optional<std::string> cache_dir;
  std::optional<std::string> data_dir;
  std::optional<std::string> annotations;
  std::optional<std::string> truth;
  std::optional<int> window;
  std::optional<int> min_count;
  std::optional<int> workers;
  std::optional<int> dims;
  std::optional<int> batch_words;
  std::optional<int> negative;
  std::optional<int> epochs;
  std::optional<double> learning_rate;
  std::optional<double> subsample;
  std::optional<std::uint64_t> seed;
};

void add_config(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON or TOML config file")->check(CLI::ExistingFile);
  app->add_option("--data-dir", f.data_dir, "stopwords, gazetteers and lexicon");
}

void add_target(CLI::App* app, Flags& f, const std::string& name) {
  app->add_option(name, f.query, "target entity surface, e.g. \"Saeedeh Shekarpour\"");
  app->add_option("--target-type", f.target_type, "PERSON, LOCATION or ORGANIZATION");
}

void add_hyper(CLI::App* app, Flags& f) {
  app->add_option("--window", f.window);
  app->add_option("--min-count", f.min_count);
  app->add_option("--workers", f.workers);
  app->add_option("--dims", f.dims);
  app->add_option("--batch-words", f.batch_words);
  app->add_option("--negative", f.negative);
  app->add_option("--epochs", f.epochs);
  app->add_option("--lr", f.learning_rate, "initial learning rate");
  app->add_option("--sample", f.subsample, "subsampling threshold");
  app->add_option("--seed", f.seed);
}

template <typename T, typename U>
void set_if(const std::optional<T>& flag, U& field) {
  if (flag) field = *flag;
}

PipelineConfig resolve_config(const Flags& f, bool typing) {
  PipelineConfig cfg;
  cfg.data_dir = EMERGEKG_DEFAULT_DATA_DIR;
  if (f.config) cfg = load_config_file(*f.config, std::move(cfg));
  set_if(f.query, cfg.query);
  if (f.target_type) {
    cfg.target_type = parse_coarse_type(*f.target_type);
    if (!cfg.target_type) {
      throw Error(ErrorCode::kConfig, "unknown target type '" + *f.target_type + "'");
    }
  }
  set_if(f.n, cfg.n);
  set_if(f.k, cfg.k);
  set_if(f.m, cfg.m);
  if (f.variant) {
    (typing ? cfg.typing_variant : cfg.association_variant) = parse_corpus_variant(*f.variant);
  }
  if (f.fixtures) cfg.fixture_dir = fs::path(*f.fixtures);
  if (f.cache_dir) cfg.cache_dir = *f.cache_dir;
  if (f.data_dir) cfg.data_dir = *f.data_dir;
  if (f.annotations) {
    if (*f.annotations == "heuristic") {
      cfg.recognizer = "heuristic";
    } else {
      cfg.recognizer = "annotations";
      cfg.annotations_dir = fs::path(*f.annotations);
    }
  }
  if (f.truth) cfg.truth_path = fs::path(*f.truth);
  Hyperparameters& h = cfg.hyper;
  set_if(f.window, h.window);
  set_if(f.min_count, h.min_count);
  set_if(f.workers, h.workers);
  set_if(f.dims, h.dims);
  set_if(f.batch_words, h.batch_words);
  set_if(f.negative, h.negative_samples);
  set_if(f.epochs, h.epochs);
  set_if(f.learning_rate, h.initial_learning_rate);
  set_if(f.subsample, h.subsample_threshold);
  set_if(f.seed, h.seed);
  return cfg;
}

TargetEntity require_target(const PipelineConfig& cfg) {
  if (trim(cfg.query).empty()) {
    throw Error(ErrorCode::kConfig, "a target entity is required (--target or config 'query')");
  }
  return TargetEntity::from_surface(cfg.query, cfg.target_type);
}

std::string annotation_backend(const PipelineConfig& cfg) {
  if (cfg.recognizer == "heuristic") return "heuristic";
  if (cfg.annotations_dir) return cfg.annotations_dir->string();
  if (cfg.fixture_dir) return (*cfg.fixture_dir / "annotations").string();
  throw Error(ErrorCode::kConfig, "--annotations <dir>|heuristic is required");
}

void emit(const std::optional<std::string>& out, std::string_view content) {
  if (out) {
    write_file(*out, content);
  } else {
    std::cout << content;
  }
}

WordSet stopwords_for(const PipelineConfig& cfg, const std::optional<std::string>& file) {
  return file ? load_word_set(*file, true) : load_stopwords(cfg.data_dir);
}

EntityInventory read_inventory(const std::string& path) {
  return parse_inventory_json(read_file(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Typed entity cards and associated entities from search results"};
  app.require_subcommand(1);
  Flags f;

  std::optional<std::string> out;
  std::optional<std::string> docs_path;
  std::optional<std::string> corpus_path;
  std::optional<std::string> entities_path;
  std::optional<std::string> entities_out;
  std::optional<std::string> model_path;
  std::optional<std::string> types_path;
  std::optional<std::string> assoc_path;
  std::optional<std::string> lexicon_dir;
  std::optional<std::string> stopwords_file;
  std::string format = "json";

  CLI::App* fetch = app.add_subcommand("fetch", "retrieve snippets and extend them with page text");
  add_config(fetch, f);
  fetch->add_option("--query", f.query, "search query");
  fetch->add_option("--n", f.n, "number of snippets");
  fetch->add_option("--fixtures", f.fixtures, "offline fixture directory");
  fetch->add_option("--workers", f.workers, "concurrent page fetches");
  fetch->add_option("--out", out, "documents JSON");

  CLI::App* corpus = app.add_subcommand("corpus", "preprocess, recognize entities and build a fused corpus");
  add_config(corpus, f);
  add_target(corpus, f, "--target");
  corpus->add_option("--docs", docs_path, "documents JSON from fetch")->required();
  corpus->add_option("--mode", f.variant, "extended or enhanced");
  corpus->add_option("--annotations", f.annotations, "annotation directory or 'heuristic'");
  corpus->add_option("--fixtures", f.fixtures, "fixture directory (annotations default)");
  corpus->add_option("--stopwords", stopwords_file, "stop-word list");
  corpus->add_option("--workers", f.workers);
  corpus->add_option("--out", out, "corpus cache file");
  corpus->add_option("--entities-out", entities_out, "entity inventory JSON");

  CLI::App* train_cmd = app.add_subcommand("train", "train skip-gram embeddings");
  add_config(train_cmd, f);
  add_target(train_cmd, f, "--target");
  train_cmd->add_option("--corpus", corpus_path, "corpus cache file")->required();
  add_hyper(train_cmd, f);
  train_cmd->add_option("--out", out, "model file");

  CLI::App* associate = app.add_subcommand("associate", "rank entities by closeness to the target");
  add_config(associate, f);
  add_target(associate, f, "--target");
  associate->add_option("--model", model_path)->required();
  associate->add_option("--entities", entities_path, "entity inventory JSON")->required();
  associate->add_option("--k", f.k);
  associate->add_option("--format", format, "json or tsv");
  associate->add_option("--out", out);

  CLI::App* type = app.add_subcommand("type", "entail fine-grained types");
  add_config(type, f);
  add_target(type, f, "--target");
  type->add_option("--corpus", docs_path, "documents JSON from fetch")->required();
  type->add_option("--annotations", f.annotations, "annotation directory or 'heuristic'");
  type->add_option("--corpus-variant", f.variant, "extended or enhanced");
  type->add_option("--m", f.m);
  type->add_option("--lexicon", lexicon_dir, "WordNet-format noun lexicon");
  type->add_option("--stopwords", stopwords_file, "stop-word list");
  type->add_option("--format", format, "json");
  type->add_option("--out", out);

  CLI::App* pca = app.add_subcommand("pca", "project entity vectors to 2D");
  add_config(pca, f);
  add_target(pca, f, "--target");
  pca->add_option("--model", model_path)->required();
  pca->add_option("--entities", entities_path, "entity inventory JSON")->required();
  pca->add_option("--out", out, "CSV file");

  CLI::App* card = app.add_subcommand("card", "write the knowledge card as Turtle");
  add_config(card, f);
  add_target(card, f, "--target");
  card->add_option("--types", types_path, "types JSON");
  card->add_option("--associations", assoc_path, "associations JSON");
  card->add_option("--out", out, "Turtle file");

  CLI::App* eval = app.add_subcommand("eval", "score associations against a knowledge card");
  add_config(eval, f);
  eval->add_option("--entailed", assoc_path, "associations JSON")->required();
  eval->add_option("--truth", f.truth, "ground-truth JSON");
  eval->add_option("--out", out);

  CLI::App* pipeline = app.add_subcommand("pipeline", "run every stage and cache the artifacts");
  add_config(pipeline, f);
  pipeline->add_option("--query", f.query);
  pipeline->add_option("--target-type", f.target_type);
  pipeline->add_option("--n", f.n);
  pipeline->add_option("--k", f.k);
  pipeline->add_option("--m", f.m);
  pipeline->add_option("--corpus-variant", f.variant, "association corpus: extended or enhanced");
  pipeline->add_option("--fixtures", f.fixtures, "offline fixture directory");
  pipeline->add_option("--annotations", f.annotations, "annotation directory or 'heuristic'");
  pipeline->add_option("--cache-dir", f.cache_dir);
  pipeline->add_option("--truth", f.truth, "ground-truth JSON for eval");
  add_hyper(pipeline, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUser;
  }

  try {
    if (fetch->parsed()) {
      PipelineConfig cfg = resolve_config(f, false);
      cfg.validate();
      std::unique_ptr<SearchClient> client;
      std::unique_ptr<PageFetcher> fetcher;
      if (cfg.fixture_dir) {
        if (!fs::is_directory(*cfg.fixture_dir)) {
          throw Error(ErrorCode::kConfig, "fixture directory not found: " + cfg.fixture_dir->string());
        }
        client = std::make_unique<FixtureSearchClient>(*cfg.fixture_dir);
        fetcher = std::make_unique<FixturePageFetcher>(*cfg.fixture_dir);
      } else {
        client = make_live_search_client();
        fetcher = make_http_page_fetcher();
      }
      std::vector<Snippet> snippets = fetch_snippets(cfg.query, cfg.n, *client);
      std::vector<ExtendedDocument> docs = extend_snippets(snippets, *fetcher, cfg.hyper.workers);
      for (const ExtendedDocument& d : docs) {
        if (d.degraded) std::cerr << "warning: page for rank " << d.source_rank << " unavailable\n";
      }
      emit(out, documents_to_json(docs));
    } else if (corpus->parsed()) {
      PipelineConfig cfg = resolve_config(f, false);
      TargetEntity target = require_target(cfg);
      std::unique_ptr<Recognizer> rec = make_recognizer(annotation_backend(cfg), cfg.data_dir);
      WordSet stop = stopwords_for(cfg, stopwords_file);
      Corpus extended = prepare_corpus(parse_documents_json(read_file(*docs_path)), target,
                                       stop, CorpusVariant::kExtended);
      EntityInventory inv = recognize_corpus(extended, *rec, cfg.hyper.workers);
      Corpus chosen = cfg.association_variant == CorpusVariant::kEnhanced
                          ? build_enhanced_corpus(extended.documents, target)
                          : std::move(extended);
      emit(out, serialize_corpus(transform_corpus(chosen, inv)));
      if (entities_out) write_file(*entities_out, inventory_to_json(inv));
    } else if (train_cmd->parsed()) {
      PipelineConfig cfg = resolve_config(f, false);
      TargetEntity target = require_target(cfg);
      cfg.hyper.validate();
      Corpus c = parse_corpus(read_file(*corpus_path), target);
      emit(out, serialize_model(train(c, cfg.hyper)));
    } else if (associate->parsed()) {
      PipelineConfig cfg = resolve_config(f, false);
      TargetEntity target = require_target(cfg);
      EmbeddingModel model = parse_model(read_file(*model_path));
      AssociationList list = top_k_associated(model, target, read_inventory(*entities_path), cfg.k);
      if (list.no_candidates) std::cerr << "warning: no candidate entities in the vocabulary\n";
      if (format == "json") {
        emit(out, associations_to_json(list));
      } else if (format == "tsv") {
        emit(out, associations_to_tsv(list));
      } else {
        throw Error(ErrorCode::kConfig, "--format must be json or tsv");
      }
    } else if (type->parsed()) {
      PipelineConfig cfg = resolve_config(f, true);
      TargetEntity target = require_target(cfg);
      if (format != "json") throw Error(ErrorCode::kConfig, "--format must be json");
      std::unique_ptr<Recognizer> rec = make_recognizer(annotation_backend(cfg), cfg.data_dir);
      WordSet stop = stopwords_for(cfg, stopwords_file);
      Lexicon lex = Lexicon::load(lexicon_dir ? fs::path(*lexicon_dir) : cfg.data_dir / "lexicon");
      std::vector<ExtendedDocument> docs = parse_documents_json(read_file(*docs_path));
      Corpus extended = prepare_corpus(docs, target, stop, CorpusVariant::kExtended);
      EntityInventory inv = recognize_corpus(extended, *rec, cfg.hyper.workers);
      Corpus typing = cfg.typing_variant == CorpusVariant::kEnhanced
                          ? build_enhanced_corpus(extended.documents, target)
                          : std::move(extended);
      TypeResult types = entail_types(typing, inv, cfg.m, lex, stop);
      if (types.no_type) std::cerr << "warning: no type entailed\n";
      emit(out, types_to_json(types));
    } else if (pca->parsed()) {
      PipelineConfig cfg = resolve_config(f, false);
      TargetEntity target = require_target(cfg);
      EmbeddingModel model = parse_model(read_file(*model_path));
      Projection p = pca_project(collect_entity_vectors(model, read_inventory(*entities_path), target));
      emit(out, projection_to_csv(p));
    } else if (card->parsed()) {
      PipelineConfig cfg = resolve_config(f, false);
      TargetEntity target = require_target(cfg);
      std::vector<Triple> triples;
      if (types_path) {
        TypeResult types = parse_types_json(read_file(*types_path));
        if (types.types.empty()) std::cerr << "warning: no type triples\n";
        triples = build_type_triples(target, types);
      }
      if (assoc_path) {
        std::vector<Triple> rel =
            build_association_triples(target, parse_associations_json(read_file(*assoc_path)));
        triples.insert(triples.end(), rel.begin(), rel.end());
      }
      emit(out, serialize_turtle(triples));
    } else if (eval->parsed()) {
      PipelineConfig cfg = resolve_config(f, false);
      if (!cfg.truth_path) throw Error(ErrorCode::kConfig, "--truth is required");
      GroundTruthCard truth = parse_ground_truth_json(read_file(*cfg.truth_path));
      EvalReport r = evaluate(parse_associations_json(read_file(*assoc_path)), truth);
      emit(out, report_to_json(r));
      std::fprintf(stderr,
                   "overlap %d of k=%d, card %d: overlap/k %.2f, overlap/card %.2f, f1 %.2f\n"
                   "note: sources disagree on which ratio is called precision and which "
                   "recall; both are reported under neutral names.\n",
                   r.overlap, r.retrieved_k, r.card_size, round2(r.ratio_over_k),
                   round2(r.ratio_over_card), round2(r.f1));
    } else if (pipeline->parsed()) {
      PipelineConfig cfg = resolve_config(f, false);
      PipelineResult result = run_pipeline(cfg);
      std::cout << "config " << result.config_hash << " -> " << result.out_dir.string() << "\n";
      for (const Artifact& a : result.artifacts) {
        std::cout << "  " << a.stage << "\t" << a.path.filename().string() << "\t"
                  << a.sha256.substr(0, 16) << "\n";
      }
    }
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPipeline;
  } catch (const Error& e) {
    std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kConfig:
      case ErrorCode::kInvalidArgument:
      case ErrorCode::kIo:
      case ErrorCode::kParse:
        return kExitUser;
      default:
        return kExitPipeline;
    }
  }
  return 0;
}
