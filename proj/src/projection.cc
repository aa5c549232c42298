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

#include "emergekg/projection.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "emergekg/error.h"

namespace emergekg {
namespace {

constexpr double kTolerance = 1e-10;
constexpr int kMaxIterations = 1000;

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<double> multiply(const Matrix& a, const std::vector<double>& v) {
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::span<const double> row = a.row(r);
    double s = 0.0;
    for (std::size_t c = 0; c < row.size(); ++c) s += row[c] * v[c];
    out[r] = s;
  }
  return out;
}

// Dominant eigenpair of a symmetric positive semi-definite matrix.
std::pair<double, std::vector<double>> power_iteration(const Matrix& cov) {
  const std::size_t n = cov.rows();
  std::vector<double> v(n);
  // Fixed, non-degenerate start vector.
  std::uint64_t state = 0x2545F4914F6CDD1DULL;
  for (double& x : v) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    x = static_cast<double>(state >> 11) * 0x1.0p-53 + 0.5;
  }
  double nv = norm(v);
  for (double& x : v) x /= nv;

  for (int it = 0; it < kMaxIterations; ++it) {
    std::vector<double> w = multiply(cov, v);
    double nw = norm(w);
    if (nw == 0.0) return {0.0, v};
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] /= nw;
      delta += (w[i] - v[i]) * (w[i] - v[i]);
    }
    v = std::move(w);
    if (std::sqrt(delta) < kTolerance) break;
  }
  std::vector<double> cv = multiply(cov, v);
  double lambda = 0.0;
  for (std::size_t i = 0; i < n; ++i) lambda += v[i] * cv[i];
  return {lambda, v};
}

void fix_sign(std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  if (v[best] < 0) {
    for (double& x : v) x = -x;
  }
}

void append_double(std::string& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

Projection pca_project(const LabeledVectors& data) {
  const Matrix& x = data.vectors;
  const std::size_t rows = x.rows();
  const std::size_t dims = x.cols();
  if (rows < 3) {
    throw Error(ErrorCode::kInsufficientData, "PCA needs at least 3 vectors");
  }
  if (dims < 2) {
    throw Error(ErrorCode::kInsufficientData, "PCA needs at least 2 dimensions");
  }
  if (data.entities.size() != rows || data.types.size() != rows) {
    throw Error(ErrorCode::kInvalidArgument, "PCA labels do not match the rows");
  }

  std::vector<double> mean(dims, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < dims; ++c) mean[c] += x(r, c);
  }
  for (double& m : mean) m /= static_cast<double>(rows);
  Matrix centered(rows, dims);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < dims; ++c) centered(r, c) = x(r, c) - mean[c];
  }

  Matrix cov(dims, dims);
  const double denom = static_cast<double>(rows - 1);
  for (std::size_t i = 0; i < dims; ++i) {
    for (std::size_t j = i; j < dims; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < rows; ++r) s += centered(r, i) * centered(r, j);
      cov(i, j) = cov(j, i) = s / denom;
    }
  }

  Projection p;
  for (std::size_t i = 0; i < dims; ++i) p.total_variance += cov(i, i);
  if (!(p.total_variance > 0.0)) {
    throw Error(ErrorCode::kInsufficientData, "PCA input has zero variance");
  }

  p.components = Matrix(2, dims);
  Matrix work = cov;
  for (int k = 0; k < 2; ++k) {
    auto [lambda, v] = power_iteration(work);
    fix_sign(v);
    p.explained_variance[k] = std::max(0.0, lambda);
    for (std::size_t c = 0; c < dims; ++c) p.components(k, c) = v[c];
    for (std::size_t i = 0; i < dims; ++i) {
      for (std::size_t j = 0; j < dims; ++j) work(i, j) -= lambda * v[i] * v[j];
    }
  }

  p.points.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    double px = 0.0;
    double py = 0.0;
    for (std::size_t c = 0; c < dims; ++c) {
      px += centered(r, c) * p.components(0, c);
      py += centered(r, c) * p.components(1, c);
    }
    p.points.push_back({data.entities[r], data.types[r], px, py});
  }
  return p;
}

LabeledVectors collect_entity_vectors(const EmbeddingModel& model,
                                      const EntityInventory& inventory,
                                      const TargetEntity& target) {
  LabeledVectors out;
  std::vector<int> rows;
  for (const auto& [token, info] : inventory.distinct_entities) {
    if (token == target.fused_token) continue;
    if (std::optional<int> idx = model.vocab.index_of(token)) {
      out.entities.push_back(token);
      out.types.push_back(info.coarse_type);
      rows.push_back(*idx);
    }
  }
  std::optional<int> t = model.vocab.index_of(target.fused_token);
  if (!t) {
    throw Error(ErrorCode::kTargetNotInVocabulary,
                "target '" + target.fused_token + "' has no vector");
  }
  out.entities.push_back(target.fused_token);
  out.types.push_back(target.coarse_type_hint.value_or(CoarseType::kPerson));
  rows.push_back(*t);
  out.vectors = Matrix(rows.size(), model.input.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::span<const double> src = model.input.row(static_cast<std::size_t>(rows[r]));
    std::copy(src.begin(), src.end(), out.vectors.row(r).begin());
  }
  return out;
}

std::string projection_to_csv(const Projection& projection) {
  std::string out = "entity,type,x,y\n";
  for (const ProjectedPoint& p : projection.points) {
    out += csv_field(p.entity);
    out.push_back(',');
    out += coarse_type_name(p.coarse_type);
    out.push_back(',');
    append_double(out, p.x);
    out.push_back(',');
    append_double(out, p.y);
    out.push_back('\n');
  }
  return out;
}

}  // namespace emergekg
