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

#include "dpgauss/puredp/estimators.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpgauss/core/status_macros.h"

namespace dpgauss {
namespace {

constexpr double kPreconditionedKappa = 20.0;

absl::StatusOr<Dataset> Transform(const Eigen::MatrixXd& a,
                                  const Dataset& data, double scale = 1.0) {
  return Dataset::Create(scale * (a * data.points()));
}

}  // namespace

absl::StatusOr<PsdMatrix> MatrixMean(const Dataset& data, double kappa,
                                     double alpha, double beta, double epsilon,
                                     const PureMeanOracle& oracle,
                                     RngStream& rng) {
  if (!(kappa >= 1.0)) {
    return absl::InvalidArgumentError("puredp: kappa must be >= 1");
  }
  const int d = data.dim();
  const int n = data.size();
  const double scale = std::sqrt(3.0) * kappa;
  Eigen::MatrixXd flat(d * d, n);
  for (int i = 0; i < n; ++i) {
    const auto x = data.points().col(i);
    Eigen::Map<Eigen::MatrixXd>(flat.col(i).data(), d, d) =
        (x * x.transpose()) / scale;
  }
  DPGAUSS_ASSIGN_OR_RETURN(Dataset lifted, Dataset::Create(std::move(flat)));
  DPGAUSS_ASSIGN_OR_RETURN(
      const Eigen::VectorXd mean,
      oracle.Estimate(lifted, std::sqrt(d / 3.0), alpha / std::sqrt(3.0), beta,
                      epsilon, rng));
  const Eigen::MatrixXd m = Eigen::Map<const Eigen::MatrixXd>(mean.data(), d, d);
  const Eigen::MatrixXd sym = Symmetrize(scale * m);
  if (!(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym, Eigen::EigenvaluesOnly)
            .eigenvalues()
            .maxCoeff() > 0.0)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "puredp: matrix mean estimate has no positive eigenvalue (oracle ",
        oracle.name(), " on ", n, " rows); the noise swamps the signal, more "
        "rows per partition are needed"));
  }
  return PsdMatrix::Project(sym);
}

absl::StatusOr<WeakPreconditioner> WeakPrecondition(
    const Dataset& data, double kappa, double beta, double epsilon,
    const PureMeanOracle& oracle, RngStream& rng, const PureDpConfig& config) {
  if (!(kappa >= kPreconditionedKappa)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "puredp: weak preconditioning needs kappa >= 20 (got ", kappa,
        "); skip preconditioning below this threshold"));
  }
  WeakPreconditioner result;
  DPGAUSS_ASSIGN_OR_RETURN(
      result.sigma_hat,
      MatrixMean(data, kappa, config.round_alpha(), beta, epsilon, oracle, rng));
  const int d = data.dim();
  const double threshold = 0.5 * kappa * (1.0 - config.threshold_tolerance);
  Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(d, d);
  const Eigen::VectorXd& values = result.sigma_hat.eigenvalues();
  const Eigen::MatrixXd& vectors = result.sigma_hat.eigenvectors();
  for (int i = 0; i < d; ++i) {
    if (values(i) >= threshold) {
      pi += vectors.col(i) * vectors.col(i).transpose();
      ++result.top_rank;
    }
  }
  result.a = config.rescale *
             (Eigen::MatrixXd::Identity(d, d) - (1.0 - config.gamma) * pi);
  return result;
}

int RecursiveRounds(double kappa) {
  if (kappa <= kPreconditionedKappa) return 0;
  return static_cast<int>(
      std::ceil(std::log(kappa / kPreconditionedKappa) / std::log(100.0 / 99.0)));
}

absl::StatusOr<PreconditionerChain> RecursivePrecondition(
    const Dataset& data, double kappa, double epsilon,
    const PureMeanOracle& oracle, RngStream& rng, const PureDpConfig& config,
    BudgetLedger* ledger, const PrivacyBudget* budget) {
  if (!(kappa >= 1.0)) {
    return absl::InvalidArgumentError("puredp: kappa must be >= 1");
  }
  const int d = data.dim();
  PreconditionerChain chain;
  chain.product = Eigen::MatrixXd::Identity(d, d);
  chain.kappas.push_back(kappa);
  const int rounds = RecursiveRounds(kappa);
  if (rounds == 0) return chain;

  const int m = data.size() / rounds;
  if (m < d) {
    return absl::InvalidArgumentError(absl::StrCat(
        "puredp: recursive preconditioning with kappa = ", kappa, " needs ",
        rounds, " partitions of at least d = ", d, " points, i.e. n >= ",
        static_cast<long long>(rounds) * d, " (got n = ", data.size(), ")"));
  }
  chain.partition_size = m;
  const double beta = 1.0 / (1000.0 * rounds);
  double kappa_j = kappa;
  for (int j = 0; j < rounds && kappa_j >= kPreconditionedKappa; ++j) {
    DPGAUSS_ASSIGN_OR_RETURN(
        const Dataset part, Transform(chain.product, data.Slice(j * m, (j + 1) * m)));
    DPGAUSS_ASSIGN_OR_RETURN(
        const WeakPreconditioner weak,
        WeakPrecondition(part, kappa_j, beta, epsilon, oracle, rng, config));
    chain.rounds.push_back(weak.a);
    chain.product = weak.a * chain.product;
    kappa_j *= 0.99;
    chain.kappas.push_back(kappa_j);
  }
  if (ledger != nullptr && budget != nullptr) {
    ledger->Charge(*budget, "recursive_precondition",
                   absl::StrCat("parallel over ", chain.rounds.size(),
                                " partitions"));
  }
  return chain;
}

absl::StatusOr<EstimationReport> EstimateCovariance(
    const Dataset& data, double kappa, double alpha, double epsilon,
    const PureMeanOracle& oracle, RngStream& rng, const PureDpConfig& config) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    return absl::InvalidArgumentError("puredp: alpha must lie in (0, 1]");
  }
  DPGAUSS_ASSIGN_OR_RETURN(const PrivacyBudget root,
                           PrivacyBudget::Create(epsilon, 0.0));
  EstimationReport report;
  report.pipeline = "pure_cov";
  report.ledger = BudgetLedger(root);
  const double beta = 0.01;

  if (RecursiveRounds(kappa) == 0) {
    DPGAUSS_ASSIGN_OR_RETURN(
        report.covariance,
        MatrixMean(data, kappa, alpha / kappa, beta, epsilon, oracle, rng));
    report.ledger.Charge(root, "matrix_mean", "no preconditioning needed");
    report.failure_probability = beta;
    return report;
  }

  const int half = data.size() / 2;
  const PrivacyBudget part = root.Part(Fraction::Of(1, 2), Fraction::Zero());
  DPGAUSS_ASSIGN_OR_RETURN(
      const PreconditionerChain chain,
      RecursivePrecondition(data.Slice(0, half), kappa, part.epsilon(), oracle,
                            rng, config, &report.ledger, &part));
  DPGAUSS_ASSIGN_OR_RETURN(
      const Dataset second,
      Transform(chain.product, data.Slice(half, data.size())));
  DPGAUSS_ASSIGN_OR_RETURN(
      const PsdMatrix sigma1,
      MatrixMean(second, kPreconditionedKappa, alpha / kPreconditionedKappa,
                 beta, part.epsilon(), oracle, rng));
  report.ledger.Charge(part, "matrix_mean");
  const Eigen::MatrixXd a_inv = chain.product.inverse();
  DPGAUSS_ASSIGN_OR_RETURN(
      report.covariance,
      PsdMatrix::Project(a_inv * sigma1.matrix() * a_inv.transpose()));
  report.AddDiagnostic("preconditioning_rounds", chain.rounds.size());
  report.failure_probability = 0.01 + beta;
  return report;
}

absl::StatusOr<EstimationReport> EstimateMean(const Dataset& data, double kappa,
                                              double radius, double alpha,
                                              double epsilon,
                                              const PureMeanOracle& oracle,
                                              RngStream& rng,
                                              const PureDpConfig& config) {
  if (!(alpha > 0.0)) return absl::InvalidArgumentError("puredp: alpha must be > 0");
  DPGAUSS_ASSIGN_OR_RETURN(const PrivacyBudget root,
                           PrivacyBudget::Create(epsilon, 0.0));
  EstimationReport report;
  report.pipeline = "pure_mean";
  report.ledger = BudgetLedger(root);
  const double beta = 0.01;
  const double shrink = std::sqrt(kPreconditionedKappa);
  const int d = data.dim();

  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(d, d);
  Dataset block = data;
  PrivacyBudget oracle_budget = root;
  if (RecursiveRounds(kappa) > 0) {
    const int third = data.size() / 3;
    if (third < 1) {
      return absl::InvalidArgumentError("puredp: mean estimation needs n >= 3");
    }
    if (data.size() % 3 != 0) {
      report.warnings.push_back(absl::StrCat(
          "puredp: n = ", data.size(), " is not a multiple of 3; dropped the last ",
          data.size() % 3, " points"));
    }
    Eigen::MatrixXd diffs(d, third);
    for (int i = 0; i < third; ++i) {
      diffs.col(i) = (data.points().col(2 * i + 1) - data.points().col(2 * i)) /
                     std::sqrt(2.0);
    }
    DPGAUSS_ASSIGN_OR_RETURN(const Dataset paired,
                             Dataset::Create(std::move(diffs)));
    const PrivacyBudget part = root.Part(Fraction::Of(1, 2), Fraction::Zero());
    DPGAUSS_ASSIGN_OR_RETURN(
        const PreconditionerChain chain,
        RecursivePrecondition(paired, kappa, part.epsilon(), oracle, rng, config,
                              &report.ledger, &part));
    a = chain.product;
    block = data.Slice(2 * third, 3 * third);
    oracle_budget = part;
    report.AddDiagnostic("preconditioning_rounds", chain.rounds.size());
  }
  DPGAUSS_ASSIGN_OR_RETURN(const Dataset scaled, Transform(a, block, 1.0 / shrink));
  DPGAUSS_ASSIGN_OR_RETURN(
      const Eigen::VectorXd mu_tilde,
      oracle.Estimate(scaled, radius, alpha / shrink, beta,
                      oracle_budget.epsilon(), rng));
  report.ledger.Charge(oracle_budget, "pure_mean_oracle", oracle.name());
  report.mean = shrink * a.inverse() * mu_tilde;
  report.failure_probability = 0.01 + beta;
  return report;
}

absl::StatusOr<EstimationReport> EstimateGaussian(
    const Dataset& data, double kappa, double radius, double alpha,
    double epsilon, const PureMeanOracle& oracle, bool robust, double eta,
    RngStream& rng, PureDpConfig config) {
  if (!(eta >= 0.0 && eta < 0.5)) {
    return absl::InvalidArgumentError("puredp: eta must lie in [0, 1/2)");
  }
  config.robust = robust;
  const int half = data.size() / 2;
  if (half < 1) return absl::InvalidArgumentError("puredp: need n >= 2");
  DPGAUSS_ASSIGN_OR_RETURN(const PrivacyBudget root,
                           PrivacyBudget::Create(epsilon, 0.0));
  RngStream mean_rng = rng.Split(1);
  RngStream cov_rng = rng.Split(2);
  DPGAUSS_ASSIGN_OR_RETURN(
      EstimationReport mean_report,
      EstimateMean(data.Slice(0, half), kappa, radius, alpha, epsilon / 2.0,
                   oracle, mean_rng, config));
  // The covariance half is paired into (x - x')/sqrt(2), which is zero-mean
  // with the same covariance.
  const int pairs = (data.size() - half) / 2;
  if (pairs < 1) return absl::InvalidArgumentError("puredp: need n >= 4");
  Eigen::MatrixXd diffs(data.dim(), pairs);
  for (int i = 0; i < pairs; ++i) {
    diffs.col(i) = (data.points().col(half + 2 * i + 1) -
                    data.points().col(half + 2 * i)) /
                   std::sqrt(2.0);
  }
  DPGAUSS_ASSIGN_OR_RETURN(const Dataset paired,
                           Dataset::Create(std::move(diffs)));
  DPGAUSS_ASSIGN_OR_RETURN(
      EstimationReport cov_report,
      EstimateCovariance(paired, kappa, alpha, epsilon / 2.0, oracle, cov_rng,
                         config));
  EstimationReport report;
  report.pipeline = "pure_gaussian";
  report.ledger = BudgetLedger(root);
  const PrivacyBudget part = root.Part(Fraction::Of(1, 2), Fraction::Zero());
  for (const LedgerEntry& e : mean_report.ledger.entries()) {
    report.ledger.Charge(part.Part(e.epsilon_share, Fraction::Zero()),
                         "mean." + e.mechanism, e.note);
  }
  for (const LedgerEntry& e : cov_report.ledger.entries()) {
    report.ledger.Charge(part.Part(e.epsilon_share, Fraction::Zero()),
                         "covariance." + e.mechanism, e.note);
  }
  report.mean = mean_report.mean;
  report.covariance = cov_report.covariance;
  report.warnings = mean_report.warnings;
  report.failure_probability =
      mean_report.failure_probability + cov_report.failure_probability;
  const double target =
      alpha + (robust ? config.robust_error_constant * std::sqrt(eta) : 0.0);
  report.AddDiagnostic("target_error", target);
  return report;
}

}  // namespace dpgauss
