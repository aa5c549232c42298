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

#ifndef EMERGEKG_ENTITY2VEC_H_
#define EMERGEKG_ENTITY2VEC_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "emergekg/corpus.h"
#include "emergekg/ner.h"

namespace emergekg {

struct Hyperparameters {
  int window = 7;
  int min_count = 1;
  int workers = 4;
  int dims = 280;
  int batch_words = 300;
  bool skip_gram = true;
  int negative_samples = 5;
  int epochs = 5;
  double initial_learning_rate = 0.025;
  double subsample_threshold = 1e-3;
  std::uint64_t seed = 1;

  // Throws Error(kInvalidArgument) when a field is out of range.
  void validate() const;
};

// Tokens ordered by descending count, ties by token. Indices are dense.
class Vocabulary {
 public:
  Vocabulary() = default;

  // Counts every token of every document; throws Error(kEmptyCorpus) when
  // nothing survives `min_count`.
  static Vocabulary build(const Corpus& corpus, int min_count);
  // Vocabulary of a stored model: counts are unknown and recorded as zero.
  static Vocabulary from_tokens(std::vector<std::string> tokens);

  std::size_t size() const { return tokens_.size(); }
  std::int64_t total_tokens() const { return total_tokens_; }
  const std::string& token(int index) const { return tokens_[index]; }
  std::int64_t count(int index) const { return counts_[index]; }
  std::optional<int> index_of(std::string_view token) const;

  // Noise distribution: probability of index i is proportional to
  // count(i)^0.75. `u` is uniform in [0, 1).
  int sample_noise(double u) const;
  double noise_probability(int index) const;

 private:
  void finalize();

  std::vector<std::string> tokens_;
  std::vector<std::int64_t> counts_;
  std::unordered_map<std::string, int> index_;
  std::int64_t total_tokens_ = 0;
  std::vector<double> noise_cdf_;
};

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct EmbeddingModel {
  Vocabulary vocab;
  Matrix input;   // the published entity/word vectors
  Matrix output;  // negative-sampling context weights
  Hyperparameters hyper;

  std::span<const double> vector(std::string_view token) const;
};

// Input rows uniform in [-0.5/dims, 0.5/dims] drawn from `seed`, output rows
// zero.
EmbeddingModel initialize_model(Vocabulary vocab, const Hyperparameters& hyper);

// Skip-gram with negative sampling. With workers == 1 the result is a pure
// function of (corpus, hyper). Throws Error(kTargetNotInVocabulary) when the
// corpus target's fused token did not make it into the vocabulary.
EmbeddingModel train(const Corpus& corpus, const Hyperparameters& hyper);

// One (center, context, negatives) training configuration. Negatives equal
// to the context are ignored, matching the trainer.
struct SkipGramExample {
  int center = 0;
  int context = 0;
  std::vector<int> negatives;
};

//   -log sigma(out[context] . in[center])
//     - sum_k log sigma(-out[negative_k] . in[center])
double negative_sampling_loss(const EmbeddingModel& model,
                              const SkipGramExample& example);

struct SkipGramGradient {
  std::vector<double> center;                       // d loss / d in[center]
  std::map<int, std::vector<double>> output_rows;   // d loss / d out[row]
};

SkipGramGradient negative_sampling_gradient(const EmbeddingModel& model,
                                            const SkipGramExample& example);

// Applies the trainer's in-place update for one example at learning rate
// `alpha`.
void sgd_step(EmbeddingModel& model, const SkipGramExample& example,
              double alpha);

// dot(a, b) / (|a| |b|). Throws Error(kZeroVector) for an all-zero input and
// Error(kInvalidArgument) on a dimension mismatch.
double cosine(std::span<const double> a, std::span<const double> b);

struct AssociationResult {
  std::string entity;  // fused token
  CoarseType coarse_type = CoarseType::kPerson;
  double score = 0.0;

  friend bool operator==(const AssociationResult&, const AssociationResult&) = default;
};

struct AssociationList {
  std::vector<AssociationResult> results;
  // Set when no candidate entity was found in the vocabulary.
  bool no_candidates = false;
};

// Inventory entities other than the target that have a vector, ranked by
// cosine to the target's vector (ties by token), truncated to k.
AssociationList top_k_associated(const EmbeddingModel& model,
                                 const TargetEntity& target,
                                 const EntityInventory& inventory, int k);

std::string associations_to_json(const AssociationList& list);
std::string associations_to_tsv(const AssociationList& list);
AssociationList parse_associations_json(std::string_view json);

// Text format: "V dims" header, then "token v1 ... vdims" per row. Stores the
// input vectors only.
std::string serialize_model(const EmbeddingModel& model);
EmbeddingModel parse_model(std::string_view text);

}  // namespace emergekg

#endif  // EMERGEKG_ENTITY2VEC_H_
