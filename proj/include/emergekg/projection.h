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

#ifndef EMERGEKG_PROJECTION_H_
#define EMERGEKG_PROJECTION_H_

#include <array>
#include <string>
#include <vector>

#include "emergekg/corpus.h"
#include "emergekg/entity2vec.h"

namespace emergekg {

struct ProjectedPoint {
  std::string entity;
  CoarseType coarse_type = CoarseType::kPerson;
  double x = 0.0;
  double y = 0.0;
};

struct LabeledVectors {
  std::vector<std::string> entities;
  std::vector<CoarseType> types;
  Matrix vectors;  // one row per entity
};

struct Projection {
  std::vector<ProjectedPoint> points;   // input order
  std::array<double, 2> explained_variance{};
  double total_variance = 0.0;          // trace of the sample covariance
  Matrix components;                    // 2 x dims, unit rows
};

// Projects mean-centered rows onto the top two eigenvectors of the sample
// covariance (divisor N-1), found by power iteration with deflation
// (tolerance 1e-10, at most 1000 iterations per component). Each
// eigenvector's largest-magnitude coordinate is made positive.
// Throws Error(kInsufficientData) for fewer than 3 rows, fewer than 2
// columns, or zero variance.
Projection pca_project(const LabeledVectors& data);

// Rows for the inventory entities that have vectors, then the target (typed
// by its hint, PERSON by default).
LabeledVectors collect_entity_vectors(const EmbeddingModel& model,
                                      const EntityInventory& inventory,
                                      const TargetEntity& target);

// "entity,type,x,y" header then one row per point.
std::string projection_to_csv(const Projection& projection);

}  // namespace emergekg

#endif  // EMERGEKG_PROJECTION_H_
