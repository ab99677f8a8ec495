// Copyright 2026 The dpgauss Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPGAUSS_TESTS_ACCEPTANCE_CRITERIA_H_
#define DPGAUSS_TESTS_ACCEPTANCE_CRITERIA_H_

#include <algorithm>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"

namespace dpgauss::acceptance {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Each returns its verdict plus a one-line summary.
Outcome TruncatedLaplaceExactness();
Outcome GaussianSamplingPrivacy();
Outcome GaussianSamplingScaling();
Outcome WeakPreconditionerSoundness();
Outcome RecursivePreconditioner();
Outcome PureCovarianceEndToEnd();
Outcome EntropyProperties();
Outcome ScoreSensitivity();
Outcome OutlierRateSelection();
Outcome RobustMeanEndToEnd();
Outcome RobustCovarianceEndToEnd();
Outcome TvBracketCheck();
Outcome BudgetLedgerAndGolden();

inline double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  if (n == 0) return 0.0;
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Mid-rank Spearman correlation.
double Spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace dpgauss::acceptance

#endif  // DPGAUSS_TESTS_ACCEPTANCE_CRITERIA_H_
