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

#ifndef DPGAUSS_AUDIT_AUDIT_H_
#define DPGAUSS_AUDIT_AUDIT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "dpgauss/approxdp/robust.h"
#include "dpgauss/approxdp/witness.h"
#include "dpgauss/core/dataset.h"
#include "dpgauss/core/psd_matrix.h"
#include "dpgauss/core/rng.h"
#include "dpgauss/mechanisms/budget.h"

namespace dpgauss {

enum class AuditVerdict { kConsistent, kViolated, kInconclusive };
const char* AuditVerdictName(AuditVerdict verdict);

struct AuditReport {
  std::string mechanism;
  int64_t trials = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  double mean_loss = 0.0;
  double mean_loss_se = 0.0;
  // Fraction of trials with loss above epsilon.
  double tail_frequency = 0.0;
  // One-sided 99% Clopper-Pearson bounds on the tail probability.
  double tail_lower_99 = 0.0;
  double tail_upper_99 = 1.0;
  AuditVerdict verdict = AuditVerdict::kInconclusive;
  std::vector<std::pair<std::string, double>> diagnostics;
  std::vector<std::string> warnings;

  void AddDiagnostic(std::string name, double value) {
    diagnostics.emplace_back(std::move(name), value);
  }
  std::optional<double> Diagnostic(const std::string& name) const;
};

// One-sided Clopper-Pearson bounds at the given confidence for `successes`
// out of `trials`.
double ClopperPearsonLower(int64_t successes, int64_t trials,
                           double confidence = 0.99);
double ClopperPearsonUpper(int64_t successes, int64_t trials,
                           double confidence = 0.99);

// Violated when the lower bound exceeds delta, consistent when the observed
// frequency is at most delta, inconclusive otherwise.
AuditVerdict TailVerdict(int64_t exceed, int64_t trials, double delta);

// sigma1^{1/2} (I + delta_rel U) sigma1^{1/2} with U the direction scaled to
// unit Frobenius norm, so that RelFrobenius(result, sigma1) = delta_rel. The default direction is
// diag(1, -1, 1, -1, ...).
absl::StatusOr<PsdMatrix> CovarianceAtRelFrobenius(
    const PsdMatrix& sigma1, double delta_rel,
    const std::optional<Eigen::MatrixXd>& direction = std::nullopt);

// Monte Carlo of the privacy loss of the k-sample release with input sigma1
// against sigma2. Trial t draws from rng.Split(t), so the result does not
// depend on `threads`; 0 uses the hardware concurrency.
absl::StatusOr<AuditReport> AuditGaussianSampling(const PsdMatrix& sigma1,
                                                  const PsdMatrix& sigma2,
                                                  int k, double epsilon,
                                                  double delta, int64_t trials,
                                                  RngStream& rng,
                                                  int threads = 0);

struct HockeyStickEstimate {
  // D_{e^eps}(p, q) and D_{e^eps}(q, p) at the requested bin count.
  double forward = 0.0;
  double backward = 0.0;
  // max(forward, backward).
  double value = 0.0;
  // Same maximum at half and double the bins.
  double half_bins = 0.0;
  double double_bins = 0.0;
  double range_lo = 0.0;
  double range_hi = 0.0;
  std::vector<std::string> warnings;
};

// Histogram plug-in estimate over a shared range (pooled min/max unless
// given).
absl::StatusOr<HockeyStickEstimate> HockeyStick1d(
    const std::vector<double>& samples_p, const std::vector<double>& samples_q,
    double epsilon, int bins,
    std::optional<std::pair<double, double>> range = std::nullopt);

// D_{e^eps}(N(0,1), N(mu,1)) in closed form.
double GaussianShiftHockeyStick(double mu, double epsilon);

enum class Replacement {
  // Row i of Y' is row i of Y.
  kIdentical,
  // A random row is replaced by another row plus N(0, I) noise.
  kResample,
  // The row of largest norm is replaced by a far point 1e3 (1 + ||x||) away.
  kExtreme,
};

struct SolverAuditOptions {
  WitnessProgram program = WitnessProgram::kMean;
  Replacement replacement = Replacement::kResample;
  ApproxDpConfig config;
};

// Neighbor pairs from single-row replacement. On each pair the selection runs
// on both sides with coupled noise; for an accepted tau the normalized witness
// weights of Y and Y' at tau are compared with 120 L / n plus the solvers'
// accuracy slack. REJECT or infeasibility on either side is counted, not
// treated as a violation.
absl::StatusOr<AuditReport> AuditSolverSensitivity(
    const Dataset& data, int pairs, double eta, double c,
    const PrivacyBudget& budget, RngStream& rng,
    const SolverAuditOptions& options = {});

}  // namespace dpgauss

#endif  // DPGAUSS_AUDIT_AUDIT_H_
