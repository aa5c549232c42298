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

#include "emergekg/entity2vec.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>
#include <utility>

#include "emergekg/error.h"
#include "json.hpp"

namespace emergekg {

using nlohmann::json;

namespace {

// Longest run of tokens handed to the trainer as one sentence.
constexpr std::size_t kMaxSentenceTokens = 10000;
constexpr double kFinalLearningRateFraction = 1e-4;

// The linear congruential generator of the reference word2vec trainer.
// Uniform draws use the high bits.
struct Lcg {
  std::uint64_t state;
  std::uint64_t next() {
    state = state * 25214903917ULL + 11ULL;
    return state;
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

double log_sigmoid(double x) {
  if (x >= 0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

template <bool kShared>
inline double load(double& x) {
  if constexpr (kShared) {
    return std::atomic_ref<double>(x).load(std::memory_order_relaxed);
  } else {
    return x;
  }
}

template <bool kShared>
inline void store(double& x, double v) {
  if constexpr (kShared) {
    std::atomic_ref<double>(x).store(v, std::memory_order_relaxed);
  } else {
    x = v;
  }
}

struct Target {
  int row;
  double label;
};

// One negative-sampling update of the center row against (context, label 1)
// followed by the negatives (label 0). With kShared the tables may be
// updated concurrently by other workers; lost updates are tolerated.
template <bool kShared>
void update_example(double* in_row, Matrix& output, int dims,
                    std::span<const Target> targets, double alpha,
                    std::vector<double>& neu1e) {
  std::fill(neu1e.begin(), neu1e.end(), 0.0);
  for (const Target& t : targets) {
    double* u = output.row(static_cast<std::size_t>(t.row)).data();
    double f = 0.0;
    for (int d = 0; d < dims; ++d) f += load<kShared>(in_row[d]) * load<kShared>(u[d]);
    const double g = (t.label - sigmoid(f)) * alpha;
    for (int d = 0; d < dims; ++d) neu1e[d] += g * load<kShared>(u[d]);
    for (int d = 0; d < dims; ++d) {
      store<kShared>(u[d], load<kShared>(u[d]) + g * load<kShared>(in_row[d]));
    }
  }
  for (int d = 0; d < dims; ++d) {
    store<kShared>(in_row[d], load<kShared>(in_row[d]) + neu1e[d]);
  }
}

std::vector<Target> example_targets(const SkipGramExample& ex) {
  std::vector<Target> targets{{ex.context, 1.0}};
  for (int n : ex.negatives) {
    if (n != ex.context) targets.push_back({n, 0.0});
  }
  return targets;
}

void check_row(const EmbeddingModel& model, int row) {
  if (row < 0 || static_cast<std::size_t>(row) >= model.input.rows()) {
    throw Error(ErrorCode::kInvalidArgument,
                "row " + std::to_string(row) + " outside the vocabulary");
  }
}

void check_example(const EmbeddingModel& model, const SkipGramExample& ex) {
  check_row(model, ex.center);
  check_row(model, ex.context);
  for (int n : ex.negatives) check_row(model, n);
}

struct Job {
  int epoch;
  std::size_t first;
  std::size_t last;
};

template <bool kShared>
void run_worker(EmbeddingModel& model,
                const std::vector<std::vector<int>>& sentences,
                const std::vector<Job>& jobs, std::atomic<std::size_t>& next_job,
                std::atomic<std::int64_t>& presented, std::int64_t total,
                std::uint64_t seed) {
  const Hyperparameters& h = model.hyper;
  const Vocabulary& vocab = model.vocab;
  const int dims = h.dims;
  const double sample_words =
      h.subsample_threshold * static_cast<double>(vocab.total_tokens());
  Lcg rng{seed};
  std::vector<double> neu1e(static_cast<std::size_t>(dims));
  std::vector<std::pair<int, std::size_t>> kept;  // (word, index in sentence)
  std::vector<Target> targets;

  for (std::size_t j = next_job++; j < jobs.size(); j = next_job++) {
    for (std::size_t s = jobs[j].first; s < jobs[j].last; ++s) {
      const std::vector<int>& sentence = sentences[s];
      const std::int64_t base = presented.fetch_add(
          static_cast<std::int64_t>(sentence.size()), std::memory_order_relaxed);
      kept.clear();
      for (std::size_t i = 0; i < sentence.size(); ++i) {
        const int w = sentence[i];
        if (h.subsample_threshold > 0) {
          const double count = static_cast<double>(vocab.count(w));
          const double keep =
              (std::sqrt(count / sample_words) + 1.0) * sample_words / count;
          if (keep < rng.uniform()) continue;
        }
        kept.emplace_back(w, i);
      }
      for (std::size_t p = 0; p < kept.size(); ++p) {
        const double progress = std::min(
            1.0, static_cast<double>(base + static_cast<std::int64_t>(kept[p].second)) /
                     static_cast<double>(total));
        const double alpha = h.initial_learning_rate *
                             (1.0 - (1.0 - kFinalLearningRateFraction) * progress);
        const auto reach = static_cast<std::size_t>(
            h.window - static_cast<int>((rng.next() >> 16) % static_cast<std::uint64_t>(h.window)));
        const std::size_t lo = p >= reach ? p - reach : 0;
        const std::size_t hi = std::min(kept.size() - 1, p + reach);
        double* in_row = model.input.row(static_cast<std::size_t>(kept[p].first)).data();
        for (std::size_t c = lo; c <= hi; ++c) {
          if (c == p) continue;
          const int context = kept[c].first;
          targets.clear();
          targets.push_back({context, 1.0});
          for (int k = 0; k < h.negative_samples; ++k) {
            const int noise = vocab.sample_noise(rng.uniform());
            if (noise != context) targets.push_back({noise, 0.0});
          }
          update_example<kShared>(in_row, model.output, dims, targets, alpha, neu1e);
        }
      }
    }
  }
}

void append_double(std::string& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

}  // namespace

void Hyperparameters::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "hyperparameter " + what);
  };
  if (window < 1) fail("window must be >= 1");
  if (dims < 1) fail("dims must be >= 1");
  if (negative_samples < 1) fail("negative_samples must be >= 1");
  if (!(initial_learning_rate > 0 && initial_learning_rate < 1)) {
    fail("initial_learning_rate must be in (0, 1)");
  }
  if (min_count < 1) fail("min_count must be >= 1");
  if (workers < 1) fail("workers must be >= 1");
  if (batch_words < 1) fail("batch_words must be >= 1");
  if (epochs < 0) fail("epochs must be >= 0");
  if (!(subsample_threshold >= 0)) fail("subsample_threshold must be >= 0");
  if (!skip_gram) fail("skip_gram must be on; CBOW is not supported");
}

Vocabulary Vocabulary::build(const Corpus& corpus, int min_count) {
  std::unordered_map<std::string, std::int64_t> counts;
  for (const ExtendedDocument& doc : corpus.documents) {
    for (const Token& t : doc.tokens) ++counts[t.text];
  }
  Vocabulary v;
  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (auto& [token, count] : counts) {
    if (count >= min_count) kept.emplace_back(token, count);
  }
  if (kept.empty()) {
    throw Error(ErrorCode::kEmptyCorpus,
                "corpus has no tokens with count >= " + std::to_string(min_count));
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  for (auto& [token, count] : kept) {
    v.tokens_.push_back(token);
    v.counts_.push_back(count);
    v.total_tokens_ += count;
  }
  v.finalize();
  return v;
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
  Vocabulary v;
  v.tokens_ = std::move(tokens);
  v.counts_.assign(v.tokens_.size(), 0);
  v.finalize();
  return v;
}

void Vocabulary::finalize() {
  index_.clear();
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], static_cast<int>(i)).second) {
      throw Error(ErrorCode::kParse, "duplicate vocabulary token '" + tokens_[i] + "'");
    }
  }
  noise_cdf_.resize(tokens_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    acc += std::pow(static_cast<double>(counts_[i]), 0.75);
    noise_cdf_[i] = acc;
  }
}

std::optional<int> Vocabulary::index_of(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Vocabulary::sample_noise(double u) const {
  if (noise_cdf_.empty() || noise_cdf_.back() <= 0) {
    return static_cast<int>(u * static_cast<double>(tokens_.size()));
  }
  const double x = u * noise_cdf_.back();
  auto it = std::upper_bound(noise_cdf_.begin(), noise_cdf_.end(), x);
  if (it == noise_cdf_.end()) --it;
  return static_cast<int>(it - noise_cdf_.begin());
}

double Vocabulary::noise_probability(int index) const {
  const double prev = index == 0 ? 0.0 : noise_cdf_[index - 1];
  return (noise_cdf_[index] - prev) / noise_cdf_.back();
}

std::span<const double> EmbeddingModel::vector(std::string_view token) const {
  std::optional<int> idx = vocab.index_of(token);
  if (!idx) {
    throw Error(ErrorCode::kTargetNotInVocabulary,
                "'" + std::string(token) + "' has no vector");
  }
  return input.row(static_cast<std::size_t>(*idx));
}

EmbeddingModel initialize_model(Vocabulary vocab, const Hyperparameters& hyper) {
  hyper.validate();
  EmbeddingModel model;
  const std::size_t rows = vocab.size();
  const auto dims = static_cast<std::size_t>(hyper.dims);
  model.vocab = std::move(vocab);
  model.hyper = hyper;
  model.input = Matrix(rows, dims);
  model.output = Matrix(rows, dims, 0.0);
  Lcg rng{hyper.seed};
  for (double& x : model.input.data()) {
    x = (rng.uniform() - 0.5) / static_cast<double>(hyper.dims);
  }
  return model;
}

EmbeddingModel train(const Corpus& corpus, const Hyperparameters& hyper) {
  hyper.validate();
  Vocabulary vocab = Vocabulary::build(corpus, hyper.min_count);
  const std::string& target = corpus.target.fused_token;
  if (!target.empty() && !vocab.index_of(target)) {
    throw Error(ErrorCode::kTargetNotInVocabulary,
                "target token '" + target +
                    "' is not in the vocabulary; check recognition and fusion");
  }
  EmbeddingModel model = initialize_model(std::move(vocab), hyper);

  std::vector<std::vector<int>> sentences;
  std::int64_t words_per_epoch = 0;
  for (const ExtendedDocument& doc : corpus.documents) {
    std::vector<int> sentence;
    for (const Token& t : doc.tokens) {
      std::optional<int> idx = model.vocab.index_of(t.text);
      if (!idx) continue;
      sentence.push_back(*idx);
      if (sentence.size() == kMaxSentenceTokens) {
        words_per_epoch += static_cast<std::int64_t>(sentence.size());
        sentences.push_back(std::move(sentence));
        sentence.clear();
      }
    }
    if (!sentence.empty()) {
      words_per_epoch += static_cast<std::int64_t>(sentence.size());
      sentences.push_back(std::move(sentence));
    }
  }
  const std::int64_t total = words_per_epoch * hyper.epochs;
  if (total == 0) return model;

  // Work units of at least batch_words tokens, whole sentences only.
  std::vector<Job> jobs;
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    std::size_t first = 0;
    std::size_t words = 0;
    for (std::size_t s = 0; s < sentences.size(); ++s) {
      words += sentences[s].size();
      if (words >= static_cast<std::size_t>(hyper.batch_words)) {
        jobs.push_back({epoch, first, s + 1});
        first = s + 1;
        words = 0;
      }
    }
    if (first < sentences.size()) jobs.push_back({epoch, first, sentences.size()});
  }

  std::atomic<std::size_t> next_job{0};
  std::atomic<std::int64_t> presented{0};
  if (hyper.workers == 1) {
    run_worker<false>(model, sentences, jobs, next_job, presented, total, hyper.seed);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < hyper.workers; ++w) {
      const std::uint64_t seed =
          hyper.seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(w + 1));
      pool.emplace_back([&, seed] {
        run_worker<true>(model, sentences, jobs, next_job, presented, total, seed);
      });
    }
  }
  return model;
}

double negative_sampling_loss(const EmbeddingModel& model,
                              const SkipGramExample& example) {
  check_example(model, example);
  std::span<const double> v = model.input.row(static_cast<std::size_t>(example.center));
  double loss = 0.0;
  for (const Target& t : example_targets(example)) {
    std::span<const double> u = model.output.row(static_cast<std::size_t>(t.row));
    double f = 0.0;
    for (std::size_t d = 0; d < v.size(); ++d) f += v[d] * u[d];
    loss -= t.label > 0 ? log_sigmoid(f) : log_sigmoid(-f);
  }
  return loss;
}

SkipGramGradient negative_sampling_gradient(const EmbeddingModel& model,
                                            const SkipGramExample& example) {
  check_example(model, example);
  std::span<const double> v = model.input.row(static_cast<std::size_t>(example.center));
  SkipGramGradient grad;
  grad.center.assign(v.size(), 0.0);
  for (const Target& t : example_targets(example)) {
    std::span<const double> u = model.output.row(static_cast<std::size_t>(t.row));
    double f = 0.0;
    for (std::size_t d = 0; d < v.size(); ++d) f += v[d] * u[d];
    const double coeff = sigmoid(f) - t.label;
    std::vector<double>& gu = grad.output_rows[t.row];
    gu.resize(v.size(), 0.0);
    for (std::size_t d = 0; d < v.size(); ++d) {
      grad.center[d] += coeff * u[d];
      gu[d] += coeff * v[d];
    }
  }
  return grad;
}

void sgd_step(EmbeddingModel& model, const SkipGramExample& example,
              double alpha) {
  check_example(model, example);
  std::vector<double> neu1e(model.input.cols());
  std::vector<Target> targets = example_targets(example);
  update_example<false>(model.input.row(static_cast<std::size_t>(example.center)).data(),
                        model.output, static_cast<int>(model.input.cols()), targets,
                        alpha, neu1e);
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kInvalidArgument, "cosine of vectors with different dimensions");
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) {
    throw Error(ErrorCode::kZeroVector, "cosine of a zero vector");
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

AssociationList top_k_associated(const EmbeddingModel& model,
                                 const TargetEntity& target,
                                 const EntityInventory& inventory, int k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  std::span<const double> tv = model.vector(target.fused_token);
  AssociationList list;
  for (const auto& [token, info] : inventory.distinct_entities) {
    if (token == target.fused_token) continue;
    std::optional<int> idx = model.vocab.index_of(token);
    if (!idx) continue;
    list.results.push_back(
        {token, info.coarse_type, cosine(tv, model.input.row(static_cast<std::size_t>(*idx)))});
  }
  std::sort(list.results.begin(), list.results.end(),
            [](const AssociationResult& a, const AssociationResult& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.entity < b.entity;
            });
  if (list.results.size() > static_cast<std::size_t>(k)) {
    list.results.resize(static_cast<std::size_t>(k));
  }
  list.no_candidates = list.results.empty();
  return list;
}

std::string associations_to_json(const AssociationList& list) {
  json results = json::array();
  for (const AssociationResult& r : list.results) {
    results.push_back({{"entity", r.entity},
                       {"surface", defuse(r.entity)},
                       {"type", coarse_type_name(r.coarse_type)},
                       {"score", r.score}});
  }
  return json{{"status", list.no_candidates ? "no_candidates" : "ok"},
              {"results", results}}
             .dump(2) +
         "\n";
}

std::string associations_to_tsv(const AssociationList& list) {
  std::string out = "entity\ttype\tscore\n";
  for (const AssociationResult& r : list.results) {
    out += r.entity;
    out.push_back('\t');
    out += coarse_type_name(r.coarse_type);
    out.push_back('\t');
    append_double(out, r.score);
    out.push_back('\n');
  }
  return out;
}

AssociationList parse_associations_json(std::string_view text) {
  AssociationList list;
  try {
    json in = json::parse(text);
    for (const json& item : in.at("results")) {
      auto type = parse_coarse_type(item.at("type").get<std::string>());
      if (!type) throw Error(ErrorCode::kParse, "unknown entity type in associations");
      list.results.push_back({item.at("entity").get<std::string>(), *type,
                              item.at("score").get<double>()});
    }
    list.no_candidates = in.value("status", "ok") == "no_candidates";
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("associations: ") + e.what());
  }
  return list;
}

std::string serialize_model(const EmbeddingModel& model) {
  std::string out = std::to_string(model.input.rows()) + " " +
                    std::to_string(model.input.cols()) + "\n";
  for (std::size_t r = 0; r < model.input.rows(); ++r) {
    out += model.vocab.token(static_cast<int>(r));
    for (double x : model.input.row(r)) {
      out.push_back(' ');
      append_double(out, x);
    }
    out.push_back('\n');
  }
  return out;
}

EmbeddingModel parse_model(std::string_view text) {
  auto fail = [](const std::string& what) -> Error {
    return Error(ErrorCode::kParse, "model file: " + what);
  };
  std::size_t pos = 0;
  auto next_line = [&]() -> std::string_view {
    if (pos >= text.size()) throw fail("unexpected end of file");
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    return line;
  };
  std::vector<std::string> header = split_whitespace(next_line());
  if (header.size() != 2) throw fail("header must be 'V dims'");
  std::size_t rows = 0;
  std::size_t dims = 0;
  if (std::from_chars(header[0].data(), header[0].data() + header[0].size(), rows).ec !=
          std::errc{} ||
      std::from_chars(header[1].data(), header[1].data() + header[1].size(), dims).ec !=
          std::errc{} ||
      dims == 0) {
    throw fail("malformed header");
  }
  std::vector<std::string> tokens;
  Matrix input(rows, dims);
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::string> fields = split_whitespace(next_line());
    if (fields.size() != dims + 1) {
      throw fail("row " + std::to_string(r + 1) + " has " +
                 std::to_string(fields.size()) + " fields, expected " +
                 std::to_string(dims + 1));
    }
    tokens.push_back(fields[0]);
    for (std::size_t d = 0; d < dims; ++d) {
      const std::string& f = fields[d + 1];
      double x = 0.0;
      auto res = std::from_chars(f.data(), f.data() + f.size(), x);
      if (res.ec != std::errc{} || res.ptr != f.data() + f.size() || !std::isfinite(x)) {
        throw fail("bad number '" + f + "'");
      }
      input(r, d) = x;
    }
  }
  EmbeddingModel model;
  model.vocab = Vocabulary::from_tokens(std::move(tokens));
  model.input = std::move(input);
  model.output = Matrix(rows, dims, 0.0);
  model.hyper.dims = static_cast<int>(dims);
  return model;
}

}  // namespace emergekg
