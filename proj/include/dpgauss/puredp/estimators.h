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

#ifndef DPGAUSS_PUREDP_ESTIMATORS_H_
#define DPGAUSS_PUREDP_ESTIMATORS_H_

#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "dpgauss/core/dataset.h"
#include "dpgauss/core/psd_matrix.h"
#include "dpgauss/core/rng.h"
#include "dpgauss/mechanisms/report.h"
#include "dpgauss/puredp/oracles.h"

namespace dpgauss {

struct PureDpConfig {
  // Oracle error used inside one preconditioning round.
  double weak_alpha = 0.01;
  // Same, for the robust variant.
  double robust_weak_alpha = 0.0099;
  // A = rescale * (gamma * Pi + Pi_perp).
  double rescale = 1.09;
  double gamma = 0.9;
  // Relative tolerance on the kappa/2 eigenvalue threshold.
  double threshold_tolerance = 1e-9;
  // Constant c of the robust target error alpha + c sqrt(eta).
  double robust_error_constant = 5.0;
  bool robust = false;

  double round_alpha() const { return robust ? robust_weak_alpha : weak_alpha; }
};

// Covariance as a mean: runs the oracle on vec(x x^T) / (sqrt(3) kappa) with
// radius sqrt(d/3) and error alpha/sqrt(3), then rescales, symmetrizes and
// projects onto the PSD cone.
absl::StatusOr<PsdMatrix> MatrixMean(const Dataset& data, double kappa,
                                     double alpha, double beta, double epsilon,
                                     const PureMeanOracle& oracle,
                                     RngStream& rng);

struct WeakPreconditioner {
  Eigen::MatrixXd a;
  PsdMatrix sigma_hat = PsdMatrix::Identity(1);
  int top_rank = 0;  // Rank of Pi.
};

// One round: A = c (gamma Pi + Pi_perp), Pi the projection onto eigenvectors of
// the private estimate with eigenvalue >= kappa/2. Requires kappa >= 20.
absl::StatusOr<WeakPreconditioner> WeakPrecondition(
    const Dataset& data, double kappa, double beta, double epsilon,
    const PureMeanOracle& oracle, RngStream& rng,
    const PureDpConfig& config = {});

struct PreconditionerChain {
  std::vector<Eigen::MatrixXd> rounds;  // A_1, ..., A_L
  Eigen::MatrixXd product;              // A_L ... A_1
  std::vector<double> kappas;           // kappa_1, ..., kappa_{L+1}
  int partition_size = 0;
};

// ceil(log(kappa/20) / log(100/99)); zero when kappa <= 20.
int RecursiveRounds(double kappa);

// L rounds on disjoint contiguous partitions. Charges epsilon once (parallel
// composition) to `ledger` when rounds run.
absl::StatusOr<PreconditionerChain> RecursivePrecondition(
    const Dataset& data, double kappa, double epsilon,
    const PureMeanOracle& oracle, RngStream& rng,
    const PureDpConfig& config = {}, BudgetLedger* ledger = nullptr,
    const PrivacyBudget* budget = nullptr);

absl::StatusOr<EstimationReport> EstimateCovariance(
    const Dataset& data, double kappa, double alpha, double epsilon,
    const PureMeanOracle& oracle, RngStream& rng,
    const PureDpConfig& config = {});

absl::StatusOr<EstimationReport> EstimateMean(const Dataset& data, double kappa,
                                              double radius, double alpha,
                                              double epsilon,
                                              const PureMeanOracle& oracle,
                                              RngStream& rng,
                                              const PureDpConfig& config = {});

// Mean on the first half, covariance on the second, each at epsilon/2.
absl::StatusOr<EstimationReport> EstimateGaussian(
    const Dataset& data, double kappa, double radius, double alpha,
    double epsilon, const PureMeanOracle& oracle, bool robust, double eta,
    RngStream& rng, PureDpConfig config = {});

}  // namespace dpgauss

#endif  // DPGAUSS_PUREDP_ESTIMATORS_H_
