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

#include "dpgauss/mechanisms/selection.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpgauss/mechanisms/noise.h"

namespace dpgauss {

int ExponentialMechanism(const std::vector<double>& scores, double sensitivity,
                         double epsilon, RngStream& rng) {
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> cumulative(scores.size());
  double total = 0.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    total += std::exp(epsilon * (scores[i] - top) / (2.0 * sensitivity));
    cumulative[i] = total;
  }
  const double u = rng.Uniform() * total;
  const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
  return static_cast<int>(
      std::min<size_t>(it - cumulative.begin(), scores.size() - 1));
}

absl::StatusOr<SelectionResult> DpSelect(const std::vector<double>& scores,
                                         double sensitivity, double kappa,
                                         const PrivacyBudget& budget,
                                         RngStream& rng, BudgetLedger* ledger) {
  if (scores.empty()) {
    return absl::InvalidArgumentError("mechanisms: empty candidate list");
  }
  if (!(sensitivity > 0.0)) {
    return absl::InvalidArgumentError(
        "mechanisms: selection sensitivity must be > 0");
  }
  if (!(budget.delta() > 0.0)) {
    return absl::InvalidArgumentError("mechanisms: selection needs delta > 0");
  }
  const PrivacyBudget em_budget =
      budget.Part(Fraction::Of(1, 2), Fraction::Zero());
  const PrivacyBudget gate_budget =
      budget.Part(Fraction::Of(1, 2), Fraction::One());
  const double eps = budget.epsilon();
  const double delta = budget.delta();

  SelectionResult result;
  result.proposal = ExponentialMechanism(scores, sensitivity, eps / 2.0, rng);
  result.proposal_score = scores[result.proposal];
  auto params = TruncatedLaplaceParams::Create(
      -sensitivity * (1.0 + 2.0 * std::log(1.0 / delta) / eps),
      2.0 * sensitivity / eps);
  if (!params.ok()) return params.status();
  auto noise = TruncatedLaplaceSample(*params, rng);
  if (!noise.ok()) return noise.status();
  result.gate_noise = *noise;
  if (result.proposal_score + result.gate_noise >= kappa) {
    result.selected = result.proposal;
  }
  if (ledger != nullptr) {
    ledger->Charge(em_budget, "dp_select.exponential_mechanism");
    ledger->Charge(gate_budget, "dp_select.threshold_gate");
  }
  return result;
}

}  // namespace dpgauss
