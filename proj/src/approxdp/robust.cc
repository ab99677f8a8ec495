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

#include "dpgauss/approxdp/robust.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpgauss/approxdp/certificates.h"
#include "dpgauss/core/metrics.h"
#include "dpgauss/core/status_macros.h"
#include "dpgauss/mechanisms/gaussian_sampling.h"
#include "dpgauss/mechanisms/noise.h"
#include "dpgauss/mechanisms/selection.h"

namespace dpgauss {
namespace {

int FloorRate(double eta, int n) {
  return static_cast<int>(std::floor(eta * n + 1e-9));
}

// Candidate rate bound the pipelines scan: the range must leave room for a
// score that clears L plus the gate's downward shift.
absl::StatusOr<double> SelectionRate(int n, double eta, int l,
                                     const PrivacyBudget& budget,
                                     const ApproxDpConfig& config) {
  if (!config.lift_eta) return eta;
  const double gate_shift =
      config.score_sensitivity *
      (1.0 + 2.0 * std::log(1.0 / budget.delta()) / budget.epsilon());
  const double top = std::max(
      {2.0 * eta * n, std::ceil(eta * n) + 2.0 * (l + gate_shift), 4.0 * l});
  const double lifted = std::floor(top) / n;
  if (lifted >= 0.5) {
    return absl::InvalidArgumentError(absl::StrCat(
        "approxdp: candidate outlier rate ", lifted,
        " reaches 1/2 (eta = ", eta, ", L = ", l, ", n = ", n,
        "); more samples are needed"));
  }
  return lifted;
}

absl::Status CheckBudget(const PrivacyBudget& budget) {
  if (!(budget.epsilon() > 0.0) || !(budget.delta() > 0.0)) {
    return absl::InvalidArgumentError(
        "approxdp: robust pipelines need epsilon > 0 and delta > 0");
  }
  return absl::OkStatus();
}

absl::Status CheckEta(double eta) {
  if (!(eta >= 0.0 && eta < 0.5)) {
    return absl::InvalidArgumentError(
        absl::StrCat("approxdp: eta must lie in [0, 1/2), got ", eta));
  }
  return absl::OkStatus();
}

struct Prepared {
  std::vector<PrivacyBudget> parts;
  int l = 0;
  double rate = 0.0;
  std::unique_ptr<WitnessSolver> solver;
  std::optional<PotentialTable> table;
};

struct Plan {
  std::vector<PrivacyBudget> parts;
  int l = 0;
  double rate = 0.0;
};

absl::StatusOr<Plan> MakePlan(int n, double eta, const PrivacyBudget& budget,
                              const ApproxDpConfig& config) {
  DPGAUSS_RETURN_IF_ERROR(CheckBudget(budget));
  DPGAUSS_RETURN_IF_ERROR(CheckEta(eta));
  Plan p;
  p.parts = budget.Split(3);
  p.l = SelectionWindow(n, p.parts[0].epsilon(), p.parts[0].delta(),
                        config.beta, config.c_l);
  DPGAUSS_ASSIGN_OR_RETURN(p.rate, SelectionRate(n, eta, p.l, p.parts[0], config));
  if (FloorRate(p.rate, n) < p.l) {
    const int need = MinimalSelectionSize(p.rate, p.parts[0].epsilon(),
                                          p.parts[0].delta(), config.beta,
                                          config.c_l);
    return absl::InvalidArgumentError(absl::StrCat(
        "approxdp: floor(eta n) = ", FloorRate(p.rate, n), " < L = ", p.l,
        "; the minimal feasible n at this rate is ", need));
  }
  return p;
}

absl::StatusOr<Prepared> Prepare(const Dataset& data, double eta,
                                 const PrivacyBudget& budget,
                                 WitnessProgram program, double c,
                                 const ApproxDpConfig& config) {
  const int n = data.size();
  DPGAUSS_ASSIGN_OR_RETURN(Plan plan, MakePlan(n, eta, budget, config));
  Prepared p;
  p.parts = std::move(plan.parts);
  p.l = plan.l;
  p.rate = plan.rate;
  DPGAUSS_ASSIGN_OR_RETURN(
      p.solver, WitnessSolver::Create(data, program, c, config.witness));
  DPGAUSS_ASSIGN_OR_RETURN(
      PotentialTable table,
      PotentialTable::Build(*p.solver,
                            ScoreTableExtent(n, FloorRate(p.rate, n), p.l)));
  p.table = std::move(table);
  return p;
}

void AddSelectionDiagnostics(const SelectionOutcome& sel,
                             const PotentialTable& table, double rate,
                             EstimationReport& report) {
  report.AddDiagnostic("L", sel.l);
  report.AddDiagnostic("candidate_rate", rate);
  report.AddDiagnostic("tau_max", sel.tau_max);
  report.AddDiagnostic("proposal", sel.proposal);
  report.AddDiagnostic("proposal_score", sel.scores[sel.proposal]);
  report.AddDiagnostic("gate_noise", sel.gate_noise);
  report.AddDiagnostic("table_solves", table.solves());
  report.AddDiagnostic("table_min_feasible", table.min_feasible());
  report.AddDiagnostic("table_flat_from", table.flat_from());
  report.AddDiagnostic("solver_gap", table.max_gap());
  report.AddDiagnostic("monotonicity_defect", table.monotonicity_defect());
  if (sel.tau.has_value()) {
    report.AddDiagnostic("tau", *sel.tau);
    report.AddDiagnostic("stability_at_tau", sel.stability_at_tau);
  }
}

void AddCheckDiagnostics(const WitnessCheckOutcome& check,
                         const WitnessSolution& sol, EstimationReport& report) {
  report.AddDiagnostic("witness_potential", sol.potential);
  report.AddDiagnostic("witness_mass", sol.weights.mass());
  report.AddDiagnostic("witness_iterations", sol.certificate.iterations);
  report.AddDiagnostic("check_gamma", check.gamma);
  report.AddDiagnostic("check_statistic", check.statistic);
  report.AddDiagnostic("check_lower_tail", check.lower_tail);
  if (check.c_prime.has_value()) report.AddDiagnostic("c_prime", *check.c_prime);
}

}  // namespace

absl::Status CheckRobustPreconditions(int n, double eta,
                                     const PrivacyBudget& budget,
                                     const ApproxDpConfig& config) {
  return MakePlan(n, eta, budget, config).status();
}

int SelectionWindow(int n, double epsilon, double delta, double beta,
                    double c_l) {
  return static_cast<int>(
      std::ceil(c_l / epsilon * std::log(n / (beta * delta)) - 1e-9));
}

int MinimalSelectionSize(double eta, double epsilon, double delta, double beta,
                         double c_l) {
  auto ok = [&](int n) {
    return FloorRate(eta, n) >= SelectionWindow(n, epsilon, delta, beta, c_l);
  };
  if (!(eta > 0.0)) return 0;
  int hi = 2;
  while (!ok(hi)) {
    if (hi > (1 << 29)) return 0;
    hi *= 2;
  }
  int lo = hi / 2;
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

absl::StatusOr<SelectionOutcome> SelectOutlierRate(
    const PotentialTable& table, double eta, const PrivacyBudget& budget,
    double beta, RngStream& rng, const ApproxDpConfig& config,
    BudgetLedger* ledger) {
  DPGAUSS_RETURN_IF_ERROR(CheckEta(eta));
  const int n = table.n();
  SelectionOutcome out;
  out.l = SelectionWindow(n, budget.epsilon(), budget.delta(), beta,
                          config.c_l);
  out.tau_max = FloorRate(eta, n);
  if (out.tau_max < out.l) {
    return absl::InvalidArgumentError(absl::StrCat(
        "approxdp: floor(eta n) = ", out.tau_max, " < L = ", out.l,
        "; the minimal feasible n is ",
        MinimalSelectionSize(eta, budget.epsilon(), budget.delta(), beta,
                             config.c_l)));
  }
  out.scores.reserve(out.tau_max + 1);
  for (int tau = 0; tau <= out.tau_max; ++tau) {
    DPGAUSS_ASSIGN_OR_RETURN(double s, Score(table, tau, out.l));
    out.scores.push_back(s);
  }
  DPGAUSS_ASSIGN_OR_RETURN(
      SelectionResult r,
      DpSelect(out.scores, config.score_sensitivity, out.l, budget, rng,
               ledger));
  out.proposal = r.proposal;
  out.gate_noise = r.gate_noise;
  out.tau = r.selected;
  if (out.tau.has_value()) {
    const int tau = *out.tau;
    const int gamma = std::min({out.l / 2, tau, n - tau});
    auto stab = Stability(table, tau, gamma);
    if (stab.ok()) out.stability_at_tau = *stab;
  }
  return out;
}

absl::StatusOr<SelectionOutcome> SelectOutlierRate(
    const Dataset& data, double eta, const PrivacyBudget& budget, double beta,
    WitnessProgram program, double c, RngStream& rng,
    const ApproxDpConfig& config, BudgetLedger* ledger) {
  DPGAUSS_RETURN_IF_ERROR(CheckEta(eta));
  const int n = data.size();
  const int l =
      SelectionWindow(n, budget.epsilon(), budget.delta(), beta, config.c_l);
  DPGAUSS_ASSIGN_OR_RETURN(
      auto solver, WitnessSolver::Create(data, program, c, config.witness));
  const int tau_max = FloorRate(eta, n);
  if (tau_max < l) {
    return absl::InvalidArgumentError(absl::StrCat(
        "approxdp: floor(eta n) = ", tau_max, " < L = ", l,
        "; the minimal feasible n is ",
        MinimalSelectionSize(eta, budget.epsilon(), budget.delta(), beta,
                             config.c_l)));
  }
  DPGAUSS_ASSIGN_OR_RETURN(
      PotentialTable table,
      PotentialTable::Build(*solver, ScoreTableExtent(n, tau_max, l)));
  return SelectOutlierRate(table, eta, budget, beta, rng, config, ledger);
}

absl::StatusOr<WitnessCheckOutcome> WitnessCheck(
    const Dataset& data, const WitnessSolution& solution,
    WitnessProgram program, double c, int l, const PrivacyBudget& budget,
    RngStream& rng, const ApproxDpConfig& config, BudgetLedger* ledger) {
  if (!solution.feasible) {
    return absl::FailedPreconditionError(
        "approxdp: witness check needs a feasible solution");
  }
  if (!(c > 0.0) || l < 0) {
    return absl::InvalidArgumentError("approxdp: witness check needs C > 0");
  }
  const int n = data.size();
  const double sensitivity = config.c_delta * c * config.order_k *
                             std::sqrt(static_cast<double>(l) / n);
  DPGAUSS_ASSIGN_OR_RETURN(
      TruncatedLaplaceParams params,
      TruncatedLaplaceParams::ForPrivacy(sensitivity, budget.epsilon(),
                                         budget.delta()));
  WitnessCheckOutcome out;
  DPGAUSS_ASSIGN_OR_RETURN(out.gamma, TruncatedLaplaceSample(params, rng));
  out.lower_tail = TruncLaplaceCdf(-c / 2.0, params);
  if (ledger != nullptr) ledger->Charge(budget, "witness_check");
  const double c_prime = c + out.gamma;
  DPGAUSS_ASSIGN_OR_RETURN(
      out.statistic, WhitenedFourthMomentTop(solution.weights, data));
  if (!(c_prime > 0.0)) return out;
  bool pass = false;
  if (program == WitnessProgram::kMean) {
    DPGAUSS_ASSIGN_OR_RETURN(
        pass, CertifySubgaussian(solution.weights, data, c_prime,
                                 config.order_k));
  } else {
    DPGAUSS_ASSIGN_OR_RETURN(
        pass, CheckHypercontractivity(solution.weights, data, c_prime));
  }
  if (pass) out.c_prime = c_prime;
  return out;
}

absl::StatusOr<EstimationReport> RobustMean(const Dataset& data, double eta,
                                            const PrivacyBudget& budget,
                                            double c, RngStream& rng,
                                            const ApproxDpConfig& config) {
  DPGAUSS_ASSIGN_OR_RETURN(
      Prepared prep,
      Prepare(data, eta, budget, WitnessProgram::kMean, c, config));
  const int n = data.size();
  EstimationReport report;
  report.pipeline = "approx_mean";
  report.ledger = BudgetLedger(budget);
  report.failure_probability = 2.0 * config.beta;
  report.AddDiagnostic("C", c);

  RngStream select_rng = rng.Split(1);
  DPGAUSS_ASSIGN_OR_RETURN(
      SelectionOutcome sel,
      SelectOutlierRate(*prep.table, prep.rate, prep.parts[0], config.beta,
                        select_rng, config, &report.ledger));
  AddSelectionDiagnostics(sel, *prep.table, prep.rate, report);
  if (!sel.tau.has_value()) {
    report.halt = HaltStage::kSelection;
    return report;
  }
  const WitnessSolution& sol = prep.table->Solution(*sel.tau);
  report.witness_mean = sol.mean;

  RngStream check_rng = rng.Split(2);
  DPGAUSS_ASSIGN_OR_RETURN(
      WitnessCheckOutcome check,
      WitnessCheck(data, sol, WitnessProgram::kMean, c, prep.l, prep.parts[1],
                   check_rng, config, &report.ledger));
  AddCheckDiagnostics(check, sol, report);
  if (!check.c_prime.has_value()) {
    report.halt = HaltStage::kWitnessCheck;
    return report;
  }

  const double sensitivity =
      config.c_mu * *check.c_prime * std::sqrt(static_cast<double>(prep.l) / n);
  DPGAUSS_ASSIGN_OR_RETURN(
      double sigma, GaussianMechanismSigma(sensitivity, prep.parts[2].epsilon(),
                                           prep.parts[2].delta()));
  report.AddDiagnostic("noise_sensitivity", sensitivity);
  report.AddDiagnostic("noise_sigma", sigma);
  RngStream noise_rng = rng.Split(3);
  DPGAUSS_ASSIGN_OR_RETURN(
      Eigen::VectorXd mu,
      GaussianMechanism(sol.mean, sensitivity, prep.parts[2], noise_rng));
  report.ledger.Charge(prep.parts[2], "gaussian_mechanism");
  report.mean = std::move(mu);
  return report;
}

absl::StatusOr<int> RobustCovarianceMaxK(int n, const PrivacyBudget& budget,
                                         double c,
                                         const ApproxDpConfig& config) {
  DPGAUSS_RETURN_IF_ERROR(CheckBudget(budget));
  const std::vector<PrivacyBudget> parts = budget.Split(3);
  const int l = SelectionWindow(n, parts[0].epsilon(), parts[0].delta(),
                                config.beta, config.c_l);
  const double sensitivity =
      config.c_sigma * c * std::sqrt(static_cast<double>(l) / n);
  return GaussianSamplingMaxK(parts[2].epsilon(), parts[2].delta(),
                              sensitivity);
}

absl::StatusOr<EstimationReport> RobustCovariance(
    const Dataset& data, double eta, const PrivacyBudget& budget, double c,
    int k, RngStream& rng, const ApproxDpConfig& config) {
  const int n = data.size();
  DPGAUSS_ASSIGN_OR_RETURN(int k_max,
                           RobustCovarianceMaxK(n, budget, c, config));
  if (k_max <= 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "approxdp: no sample count is admissible at n = ", n,
        " and this budget"));
  }
  if (k < 0 || k > k_max) {
    return absl::InvalidArgumentError(absl::StrCat(
        "approxdp: sample count k = ", k,
        " exceeds the cap k_max = ", k_max,
        " = floor((eps/3 / D)^2 / (8 log(3/delta))) with D = c_sigma C "
        "sqrt(L/n)"));
  }
  if (k == 0) k = k_max;
  DPGAUSS_ASSIGN_OR_RETURN(
      Prepared prep,
      Prepare(data, eta, budget, WitnessProgram::kCovariance, c / 2.0, config));
  EstimationReport report;
  report.pipeline = "approx_cov";
  report.ledger = BudgetLedger(budget);
  report.failure_probability = 2.0 * config.beta;
  report.AddDiagnostic("C", c);
  report.AddDiagnostic("k", k);
  report.AddDiagnostic("k_max", k_max);

  RngStream select_rng = rng.Split(1);
  DPGAUSS_ASSIGN_OR_RETURN(
      SelectionOutcome sel,
      SelectOutlierRate(*prep.table, prep.rate, prep.parts[0], config.beta,
                        select_rng, config, &report.ledger));
  AddSelectionDiagnostics(sel, *prep.table, prep.rate, report);
  if (!sel.tau.has_value()) {
    report.halt = HaltStage::kSelection;
    return report;
  }
  const WitnessSolution& sol = prep.table->Solution(*sel.tau);
  report.witness_mean = sol.mean;
  report.witness_covariance = sol.second_moment;

  RngStream check_rng = rng.Split(2);
  DPGAUSS_ASSIGN_OR_RETURN(
      WitnessCheckOutcome check,
      WitnessCheck(data, sol, WitnessProgram::kCovariance, c, prep.l,
                   prep.parts[1], check_rng, config, &report.ledger));
  AddCheckDiagnostics(check, sol, report);
  if (!check.c_prime.has_value()) {
    report.halt = HaltStage::kWitnessCheck;
    return report;
  }

  RngStream noise_rng = rng.Split(3);
  DPGAUSS_ASSIGN_OR_RETURN(
      PsdMatrix sigma_hat,
      GaussianSamplingMechanism(sol.second_moment, k, noise_rng));
  report.ledger.Charge(prep.parts[2], "gaussian_sampling",
                       absl::StrCat("k = ", k));
  if (sol.second_moment.min_eigenvalue() > 0.0) {
    DPGAUSS_ASSIGN_OR_RETURN(double noise_err,
                             RelFrobenius(sigma_hat, sol.second_moment));
    report.AddDiagnostic("noise_rel_frobenius", noise_err);
  }
  report.covariance = std::move(sigma_hat);
  return report;
}

}  // namespace dpgauss
