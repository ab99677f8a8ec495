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

#ifndef DPGAUSS_MECHANISMS_SELECTION_H_
#define DPGAUSS_MECHANISMS_SELECTION_H_

#include <functional>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "dpgauss/core/dataset.h"
#include "dpgauss/core/rng.h"
#include "dpgauss/mechanisms/budget.h"

namespace dpgauss {

struct SelectionResult {
  // Index of the accepted candidate; empty means REJECT.
  std::optional<int> selected;
  // Candidate drawn by the exponential mechanism before gating.
  int proposal = 0;
  double proposal_score = 0.0;
  double gate_noise = 0.0;
};

// Exponential mechanism at epsilon/2 followed by a truncated-Laplace threshold
// gate at (epsilon/2, delta). Accepted candidates always have score >= kappa.
// Charges both halves to `ledger` when given.
absl::StatusOr<SelectionResult> DpSelect(const std::vector<double>& scores,
                                         double sensitivity, double kappa,
                                         const PrivacyBudget& budget,
                                         RngStream& rng,
                                         BudgetLedger* ledger = nullptr);

template <typename Candidate>
absl::StatusOr<std::optional<Candidate>> DpSelect(
    const std::vector<Candidate>& candidates,
    const std::function<double(const Candidate&, const Dataset&)>& score,
    double sensitivity, double kappa, const PrivacyBudget& budget,
    const Dataset& data, RngStream& rng, BudgetLedger* ledger = nullptr) {
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const Candidate& c : candidates) scores.push_back(score(c, data));
  auto result = DpSelect(scores, sensitivity, kappa, budget, rng, ledger);
  if (!result.ok()) return result.status();
  if (!result->selected.has_value()) return std::optional<Candidate>();
  return std::optional<Candidate>(candidates[*result->selected]);
}

// Samples an index with probability proportional to exp(eps * s / (2 D)).
int ExponentialMechanism(const std::vector<double>& scores, double sensitivity,
                         double epsilon, RngStream& rng);

}  // namespace dpgauss

#endif  // DPGAUSS_MECHANISMS_SELECTION_H_
