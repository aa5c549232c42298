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

#include "emergekg/eval.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "emergekg/error.h"
#include "emergekg/ner.h"
#include "emergekg/text.h"

namespace emergekg {
namespace {

std::set<std::string> normalized_set(std::span<const std::string> surfaces) {
  std::set<std::string> out;
  for (const std::string& s : surfaces) {
    std::string n = normalize_surface(defuse(s));
    if (!n.empty()) out.insert(std::move(n));
  }
  return out;
}

}  // namespace

EvalReport report_from_counts(int overlap, int retrieved_k, int card_size) {
  if (retrieved_k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  if (card_size < 1) throw Error(ErrorCode::kInvalidArgument, "ground-truth card is empty");
  if (overlap < 0 || overlap > std::min(retrieved_k, card_size)) {
    throw Error(ErrorCode::kInvalidArgument, "overlap exceeds k or card size");
  }
  EvalReport r;
  r.overlap = overlap;
  r.retrieved_k = retrieved_k;
  r.card_size = card_size;
  r.ratio_over_k = static_cast<double>(overlap) / retrieved_k;
  r.ratio_over_card = static_cast<double>(overlap) / card_size;
  double sum = r.ratio_over_k + r.ratio_over_card;
  r.f1 = sum > 0.0 ? 2.0 * r.ratio_over_k * r.ratio_over_card / sum : 0.0;
  return r;
}

EvalReport evaluate(std::span<const std::string> entailed, const GroundTruthCard& truth) {
  std::set<std::string> card = normalized_set(truth.card_entities);
  if (card.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "ground-truth card for '" + truth.entity_surface + "' is empty");
  }
  std::set<std::string> got = normalized_set(entailed);
  int overlap = 0;
  for (const std::string& s : got) overlap += card.contains(s) ? 1 : 0;
  return report_from_counts(overlap, static_cast<int>(got.size()),
                            static_cast<int>(card.size()));
}

EvalReport evaluate(const AssociationList& entailed, const GroundTruthCard& truth) {
  std::vector<std::string> surfaces;
  surfaces.reserve(entailed.results.size());
  for (const AssociationResult& r : entailed.results) surfaces.push_back(r.entity);
  return evaluate(surfaces, truth);
}

AggregateReport aggregate(std::span<const EvalReport> reports) {
  if (reports.empty()) throw Error(ErrorCode::kInvalidArgument, "nothing to aggregate");
  AggregateReport a;
  a.reports = static_cast<int>(reports.size());
  for (const EvalReport& r : reports) {
    a.overlap += r.overlap;
    a.retrieved_k += r.retrieved_k;
    a.card_size += r.card_size;
    a.ratio_over_k += r.ratio_over_k;
    a.ratio_over_card += r.ratio_over_card;
    a.f1 += r.f1;
  }
  const double n = static_cast<double>(reports.size());
  a.overlap /= n;
  a.retrieved_k /= n;
  a.card_size /= n;
  a.ratio_over_k /= n;
  a.ratio_over_card /= n;
  a.f1 /= n;
  return a;
}

double round2(double value) { return std::round(value * 100.0) / 100.0; }

GroundTruthCard parse_ground_truth_json(std::string_view json) {
  try {
    nlohmann::json j = nlohmann::json::parse(json);
    GroundTruthCard card;
    card.entity_surface = j.at("entity").get<std::string>();
    card.card_entities = j.at("card").get<std::vector<std::string>>();
    return card;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("ground-truth file: ") + e.what());
  }
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["overlap"] = report.overlap;
  j["retrieved_k"] = report.retrieved_k;
  j["card_size"] = report.card_size;
  j["ratio_over_k"] = report.ratio_over_k;
  j["ratio_over_card"] = report.ratio_over_card;
  j["f1"] = report.f1;
  return j.dump(2) + "\n";
}

}  // namespace emergekg
