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

#ifndef EMERGEKG_EVAL_H_
#define EMERGEKG_EVAL_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emergekg/entity2vec.h"

namespace emergekg {

struct GroundTruthCard {
  std::string entity_surface;
  std::vector<std::string> card_entities;
};

struct EvalReport {
  int overlap = 0;
  int retrieved_k = 0;
  int card_size = 0;
  double ratio_over_k = 0.0;
  double ratio_over_card = 0.0;
  double f1 = 0.0;  // harmonic mean of the two ratios
};

// Field-wise means over a set of reports.
struct AggregateReport {
  int reports = 0;
  double overlap = 0.0;
  double retrieved_k = 0.0;
  double card_size = 0.0;
  double ratio_over_k = 0.0;
  double ratio_over_card = 0.0;
  double f1 = 0.0;
};

// Fills the ratios from raw counts. Throws Error(kInvalidArgument) unless
// 0 <= overlap <= min(k, card_size) and k, card_size >= 1.
EvalReport report_from_counts(int overlap, int retrieved_k, int card_size);

// Surfaces are compared after de-fusing, whitespace normalization and case
// folding. Repeated surfaces count once on either side.
EvalReport evaluate(std::span<const std::string> entailed, const GroundTruthCard& truth);
EvalReport evaluate(const AssociationList& entailed, const GroundTruthCard& truth);

AggregateReport aggregate(std::span<const EvalReport> reports);

// Display rounding only; reports keep full precision.
double round2(double value);

// {"entity": str, "card": [str, ...]}
GroundTruthCard parse_ground_truth_json(std::string_view json);

std::string report_to_json(const EvalReport& report);

}  // namespace emergekg

#endif  // EMERGEKG_EVAL_H_
