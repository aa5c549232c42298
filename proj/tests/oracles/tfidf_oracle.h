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

#ifndef EMERGEKG_TESTS_ORACLES_TFIDF_ORACLE_H_
#define EMERGEKG_TESTS_ORACLES_TFIDF_ORACLE_H_

// Brute-force term scoring, written from the definitions:
//   tf = sum over documents of log(1 + f), idf = N / df, score = tf * idf.
// Frequencies are recounted by scanning every document for every term.

#include <cmath>
#include <set>
#include <string>
#include <vector>

namespace emergekg::oracle {

struct OracleScore {
  std::string term;
  double tf = 0.0;
  int df = 0;
  double idf = 0.0;
  double tfidf = 0.0;
};

inline std::vector<OracleScore> brute_force_tfidf(
    const std::vector<std::vector<std::string>>& docs) {
  std::set<std::string> terms;
  for (const auto& d : docs) terms.insert(d.begin(), d.end());
  std::vector<OracleScore> out;
  for (const std::string& t : terms) {
    OracleScore s;
    s.term = t;
    for (const auto& d : docs) {
      int f = 0;
      for (const std::string& w : d) f += (w == t) ? 1 : 0;
      if (f > 0) {
        s.tf += std::log(1.0 + f);
        ++s.df;
      }
    }
    s.idf = static_cast<double>(docs.size()) / s.df;
    s.tfidf = s.tf * s.idf;
    out.push_back(s);
  }
  return out;
}

}  // namespace emergekg::oracle

#endif  // EMERGEKG_TESTS_ORACLES_TFIDF_ORACLE_H_
