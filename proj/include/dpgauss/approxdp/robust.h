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

#ifndef DPGAUSS_APPROXDP_ROBUST_H_
#define DPGAUSS_APPROXDP_ROBUST_H_

#include <limits>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "dpgauss/approxdp/stability.h"
#include "dpgauss/approxdp/witness.h"
#include "dpgauss/core/dataset.h"
#include "dpgauss/core/rng.h"
#include "dpgauss/mechanisms/budget.h"
#include "dpgauss/mechanisms/report.h"

namespace dpgauss {

struct ApproxDpConfig {
  // L = ceil((c_l / epsilon) log(n / (beta delta))).
  double c_l = 4.0;
  // Witness-check sensitivity c_delta * C * k * sqrt(L/n).
  double c_delta = 0.02;
  // Mean release sensitivity c_mu * C' * sqrt(L/n).
  double c_mu = 0.01;
  // Covariance release sensitivity c_sigma * C * sqrt(L/n).
  double c_sigma = 0.002;
  int order_k = 2;
  double beta = 0.1;
  double score_sensitivity = 6.0;
  // Pipelines scan tau up to max(2 eta n, eta n + 2(L + gate shift), 4L)
  // instead of eta n.
  bool lift_eta = true;
  WitnessOptions witness;
};

inline constexpr double kDefaultMeanC = 2.5;
inline constexpr double kDefaultCovC = 8.0;

// ceil((c_l / epsilon) log(n / (beta delta))).
int SelectionWindow(int n, double epsilon, double delta, double beta,
                    double c_l);
// Preconditions the robust pipelines check before touching the data: budget,
// eta, and room for the selection window at the candidate rate.
absl::Status CheckRobustPreconditions(int n, double eta,
                                     const PrivacyBudget& budget,
                                     const ApproxDpConfig& config = {});

// Smallest n with floor(eta n) >= SelectionWindow(n, ...); 0 if none below
// 2^30.
int MinimalSelectionSize(double eta, double epsilon, double delta, double beta,
                         double c_l);

struct SelectionOutcome {
  // Empty means REJECT.
  std::optional<int> tau;
  // Stab(tau, min(L/2, tau, n - tau)); NaN when undefined.
  double stability_at_tau = std::numeric_limits<double>::quiet_NaN();
  int l = 0;
  int tau_max = 0;
  int proposal = 0;
  double gate_noise = 0.0;
  std::vector<double> scores;
};

// Private choice of tau in [0, floor(eta n)] from precomputed potentials.
// Charges `budget` to `ledger` when given.
absl::StatusOr<SelectionOutcome> SelectOutlierRate(
    const PotentialTable& table, double eta, const PrivacyBudget& budget,
    double beta, RngStream& rng, const ApproxDpConfig& config = {},
    BudgetLedger* ledger = nullptr);

absl::StatusOr<SelectionOutcome> SelectOutlierRate(
    const Dataset& data, double eta, const PrivacyBudget& budget, double beta,
    WitnessProgram program, double c, RngStream& rng,
    const ApproxDpConfig& config = {}, BudgetLedger* ledger = nullptr);

struct WitnessCheckOutcome {
  // Empty means REJECT.
  std::optional<double> c_prime;
  double gamma = 0.0;
  // Whitened fourth-moment statistic the check compared against C'.
  double statistic = 0.0;
  // Pr[C' < C/2] under the noise distribution.
  double lower_tail = 0.0;
};

// C' = C + gamma with gamma ~ tLap at sensitivity c_delta C k sqrt(L/n), then
// certify_subgaussian (mean) or the hypercontractivity check (covariance) at C'.
absl::StatusOr<WitnessCheckOutcome> WitnessCheck(
    const Dataset& data, const WitnessSolution& solution,
    WitnessProgram program, double c, int l, const PrivacyBudget& budget,
    RngStream& rng, const ApproxDpConfig& config = {},
    BudgetLedger* ledger = nullptr);

absl::StatusOr<EstimationReport> RobustMean(const Dataset& data, double eta,
                                            const PrivacyBudget& budget,
                                            double c, RngStream& rng,
                                            const ApproxDpConfig& config = {});

// Largest admissible sample count for the covariance release at n and the
// full budget.
absl::StatusOr<int> RobustCovarianceMaxK(int n, const PrivacyBudget& budget,
                                         double c,
                                         const ApproxDpConfig& config = {});

// k = 0 selects the largest admissible k. The witness program runs at C/2.
absl::StatusOr<EstimationReport> RobustCovariance(
    const Dataset& data, double eta, const PrivacyBudget& budget, double c,
    int k, RngStream& rng, const ApproxDpConfig& config = {});

}  // namespace dpgauss

#endif  // DPGAUSS_APPROXDP_ROBUST_H_
