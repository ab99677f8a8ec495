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

#include "dpgauss/audit/audit.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpgauss/approxdp/stability.h"
#include "dpgauss/core/status_macros.h"
#include "dpgauss/mechanisms/gaussian_sampling.h"

namespace dpgauss {

const char* AuditVerdictName(AuditVerdict verdict) {
  switch (verdict) {
    case AuditVerdict::kConsistent:
      return "consistent";
    case AuditVerdict::kViolated:
      return "violated";
    case AuditVerdict::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::optional<double> AuditReport::Diagnostic(const std::string& name) const {
  for (const auto& [key, value] : diagnostics) {
    if (key == name) return value;
  }
  return std::nullopt;
}

double ClopperPearsonLower(int64_t successes, int64_t trials,
                           double confidence) {
  if (trials <= 0 || successes <= 0) return 0.0;
  const double x = static_cast<double>(successes);
  const double n = static_cast<double>(trials);
  return boost::math::ibeta_inv(x, n - x + 1.0, 1.0 - confidence);
}

double ClopperPearsonUpper(int64_t successes, int64_t trials,
                           double confidence) {
  if (trials <= 0 || successes >= trials) return 1.0;
  const double x = static_cast<double>(successes);
  const double n = static_cast<double>(trials);
  return boost::math::ibeta_inv(x + 1.0, n - x, confidence);
}

AuditVerdict TailVerdict(int64_t exceed, int64_t trials, double delta) {
  if (ClopperPearsonLower(exceed, trials) > delta) {
    return AuditVerdict::kViolated;
  }
  if (static_cast<double>(exceed) <= delta * static_cast<double>(trials)) {
    return AuditVerdict::kConsistent;
  }
  return AuditVerdict::kInconclusive;
}

absl::StatusOr<PsdMatrix> CovarianceAtRelFrobenius(
    const PsdMatrix& sigma1, double delta_rel,
    const std::optional<Eigen::MatrixXd>& direction) {
  const int d = sigma1.dim();
  if (!(delta_rel >= 0.0) || !std::isfinite(delta_rel)) {
    return absl::InvalidArgumentError("audit: deviation must be >= 0");
  }
  Eigen::MatrixXd u;
  if (direction.has_value()) {
    if (direction->rows() != d || direction->cols() != d) {
      return absl::InvalidArgumentError("audit: direction shape mismatch");
    }
    u = Symmetrize(*direction);
  } else {
    u = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) u(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
  }
  const double norm = u.norm();
  if (!(norm > 0.0)) {
    return absl::InvalidArgumentError("audit: zero direction");
  }
  u /= norm;
  const Eigen::MatrixXd root = sigma1.Sqrt();
  const Eigen::MatrixXd inner =
      Eigen::MatrixXd::Identity(d, d) + delta_rel * u;
  if (Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(inner)
          .eigenvalues()
          .minCoeff() <= 0.0) {
    return absl::InvalidArgumentError(
        "audit: deviation too large for a positive definite result");
  }
  return PsdMatrix::Create(root * inner * root);
}

absl::StatusOr<AuditReport> AuditGaussianSampling(const PsdMatrix& sigma1,
                                                  const PsdMatrix& sigma2,
                                                  int k, double epsilon,
                                                  double delta, int64_t trials,
                                                  RngStream& rng,
                                                  int threads) {
  if (trials < 1000) {
    return absl::InvalidArgumentError("audit: need at least 1000 trials");
  }
  if (k < 1 || !(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        "audit: need k >= 1, epsilon > 0, delta in (0, 1)");
  }
  DPGAUSS_RETURN_IF_ERROR(sigma1.CheckPositiveDefinite());
  DPGAUSS_RETURN_IF_ERROR(sigma2.CheckPositiveDefinite());
  DPGAUSS_ASSIGN_OR_RETURN(const PrivacyLoss loss,
                           PrivacyLoss::Create(sigma1, sigma2));
  const int d = sigma1.dim();

  std::vector<double> z(trials);
  auto run = [&](int64_t begin, int64_t end) {
    Eigen::MatrixXd h(k, d);
    for (int64_t t = begin; t < end; ++t) {
      RngStream s = rng.Split(static_cast<uint64_t>(t));
      for (int j = 0; j < d; ++j) {
        for (int i = 0; i < k; ++i) h(i, j) = s.Normal();
      }
      z[t] = loss.EvaluateWhitened(h);
    }
  };
  int workers = threads > 0 ? threads
                            : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp<int>(workers, 1, 64);
  std::vector<std::future<void>> jobs;
  const int64_t chunk = (trials + workers - 1) / workers;
  for (int64_t begin = 0; begin < trials; begin += chunk) {
    jobs.push_back(std::async(std::launch::async, run, begin,
                              std::min(trials, begin + chunk)));
  }
  for (auto& j : jobs) j.get();

  AuditReport report;
  report.mechanism = "gaussian_sampling";
  report.trials = trials;
  report.epsilon = epsilon;
  report.delta = delta;
  double sum = 0.0;
  int64_t exceed = 0;
  for (double v : z) {
    sum += v;
    if (v > epsilon) ++exceed;
  }
  report.mean_loss = sum / trials;
  double ss = 0.0;
  for (double v : z) ss += (v - report.mean_loss) * (v - report.mean_loss);
  report.mean_loss_se = std::sqrt(ss / (trials - 1) / trials);
  report.tail_frequency = static_cast<double>(exceed) / trials;
  report.tail_lower_99 = ClopperPearsonLower(exceed, trials);
  report.tail_upper_99 = ClopperPearsonUpper(exceed, trials);
  report.verdict = TailVerdict(exceed, trials, delta);
  report.AddDiagnostic("k", k);
  report.AddDiagnostic("d", d);
  report.AddDiagnostic("exceedances", static_cast<double>(exceed));
  report.AddDiagnostic("expectation_bound", loss.ExpectationBound(k));
  report.AddDiagnostic("half_epsilon", epsilon / 2.0);
  report.AddDiagnostic("admissible_delta",
                       GaussianSamplingDelta(epsilon, delta, k));
  if (report.mean_loss > epsilon / 2.0 + 3.0 * report.mean_loss_se) {
    report.warnings.push_back(absl::StrCat(
        "mean loss ", report.mean_loss, " exceeds epsilon/2 + 3 SE"));
  }
  return report;
}

namespace {

struct Histogram {
  std::vector<double> p;
  std::vector<double> q;
};

Histogram Bin(const std::vector<double>& a, const std::vector<double>& b,
              double lo, double hi, int bins) {
  Histogram h{std::vector<double>(bins, 0.0), std::vector<double>(bins, 0.0)};
  const double width = (hi - lo) / bins;
  auto fill = [&](const std::vector<double>& xs, std::vector<double>& out) {
    for (double x : xs) {
      int i = width > 0.0 ? static_cast<int>(std::floor((x - lo) / width)) : 0;
      out[std::clamp(i, 0, bins - 1)] += 1.0;
    }
    for (double& v : out) v /= static_cast<double>(xs.size());
  };
  fill(a, h.p);
  fill(b, h.q);
  return h;
}

double Divergence(const std::vector<double>& p, const std::vector<double>& q,
                  double gamma) {
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) s += std::max(0.0, p[i] - gamma * q[i]);
  return s;
}

double BothWays(const std::vector<double>& a, const std::vector<double>& b,
                double lo, double hi, int bins, double gamma) {
  const Histogram h = Bin(a, b, lo, hi, bins);
  return std::max(Divergence(h.p, h.q, gamma), Divergence(h.q, h.p, gamma));
}

}  // namespace

absl::StatusOr<HockeyStickEstimate> HockeyStick1d(
    const std::vector<double>& samples_p, const std::vector<double>& samples_q,
    double epsilon, int bins, std::optional<std::pair<double, double>> range) {
  if (samples_p.empty() || samples_q.empty()) {
    return absl::InvalidArgumentError("audit: empty sample list");
  }
  if (bins < 2 || !(epsilon >= 0.0)) {
    return absl::InvalidArgumentError("audit: need bins >= 2, epsilon >= 0");
  }
  double lo, hi;
  if (range.has_value()) {
    lo = range->first;
    hi = range->second;
  } else {
    lo = std::min(*std::min_element(samples_p.begin(), samples_p.end()),
                  *std::min_element(samples_q.begin(), samples_q.end()));
    hi = std::max(*std::max_element(samples_p.begin(), samples_p.end()),
                  *std::max_element(samples_q.begin(), samples_q.end()));
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi >= lo)) {
    return absl::InvalidArgumentError("audit: invalid binning range");
  }
  if (hi == lo) hi = lo + 1.0;
  const double gamma = std::exp(epsilon);
  HockeyStickEstimate est;
  est.range_lo = lo;
  est.range_hi = hi;
  const Histogram h = Bin(samples_p, samples_q, lo, hi, bins);
  est.forward = Divergence(h.p, h.q, gamma);
  est.backward = Divergence(h.q, h.p, gamma);
  est.value = std::max(est.forward, est.backward);
  est.half_bins = BothWays(samples_p, samples_q, lo, hi,
                           std::max(2, bins / 2), gamma);
  est.double_bins = BothWays(samples_p, samples_q, lo, hi, 2 * bins, gamma);
  bool overlap = false;
  for (int i = 0; i < bins; ++i) {
    if (h.p[i] > 0.0 && h.q[i] > 0.0) overlap = true;
  }
  if (!overlap) est.warnings.push_back("disjoint supports");
  if (range.has_value()) {
    int64_t outside = 0;
    for (double x : samples_p) outside += (x < lo || x > hi);
    for (double x : samples_q) outside += (x < lo || x > hi);
    if (outside > 0) {
      est.warnings.push_back(
          absl::StrCat(outside, " samples outside the range were clamped"));
    }
  }
  return est;
}

double GaussianShiftHockeyStick(double mu, double epsilon) {
  const double m = std::abs(mu);
  if (m == 0.0) return 0.0;
  const boost::math::normal_distribution<double> std_normal;
  const double t = epsilon / m;
  return boost::math::cdf(std_normal, m / 2.0 - t) -
         std::exp(epsilon) * boost::math::cdf(std_normal, -m / 2.0 - t);
}

namespace {

struct Neighbor {
  int row = 0;
  Eigen::VectorXd point;
};

Neighbor DrawNeighbor(const Dataset& data, Replacement kind, RngStream& rng) {
  const int n = data.size();
  Neighbor nb;
  switch (kind) {
    case Replacement::kIdentical:
      nb.row = static_cast<int>(rng.UniformInt(n));
      nb.point = data.point(nb.row);
      break;
    case Replacement::kResample: {
      nb.row = static_cast<int>(rng.UniformInt(n));
      const int src = static_cast<int>(rng.UniformInt(n));
      nb.point = data.point(src);
      for (int j = 0; j < nb.point.size(); ++j) nb.point(j) += rng.Normal();
      break;
    }
    case Replacement::kExtreme: {
      const Eigen::VectorXd center = data.Mean();
      int far = 0;
      double best = -1.0;
      for (int i = 0; i < n; ++i) {
        const double r = (data.point(i) - center).norm();
        if (r > best) {
          best = r;
          far = i;
        }
      }
      nb.row = far;
      Eigen::VectorXd dir(data.dim());
      for (int j = 0; j < dir.size(); ++j) dir(j) = rng.Normal();
      dir.normalize();
      nb.point = data.point(far) + 1e3 * (1.0 + best) * dir;
      break;
    }
  }
  return nb;
}

// l1 distance bound from an entropy gap: Ent is 1-strongly concave in l1 on
// mass <= 1, and normalizing by a mass >= 1 - eta at most doubles it.
double GapSlack(const WitnessSolution& s, int n, double eta) {
  const double gap = std::max(0.0, s.certificate.duality_gap) * std::log(n);
  return 2.0 * std::sqrt(2.0 * gap) / (1.0 - eta);
}

}  // namespace

absl::StatusOr<AuditReport> AuditSolverSensitivity(
    const Dataset& data, int pairs, double eta, double c,
    const PrivacyBudget& budget, RngStream& rng,
    const SolverAuditOptions& options) {
  if (pairs < 10) {
    return absl::InvalidArgumentError("audit: need at least 10 pairs");
  }
  const int n = data.size();
  const ApproxDpConfig& config = options.config;
  const int l = SelectionWindow(n, budget.epsilon(), budget.delta(),
                                config.beta, config.c_l);
  const int tau_max = static_cast<int>(std::floor(eta * n + 1e-9));
  const int extent = ScoreTableExtent(n, tau_max, l);

  DPGAUSS_ASSIGN_OR_RETURN(
      auto base_solver,
      WitnessSolver::Create(data, options.program, c, config.witness));
  DPGAUSS_ASSIGN_OR_RETURN(PotentialTable base,
                           PotentialTable::Build(*base_solver, extent));

  AuditReport report;
  report.mechanism = "solver_sensitivity";
  report.trials = pairs;
  report.epsilon = budget.epsilon();
  report.delta = budget.delta();
  const double bound = 120.0 * l / n;
  double max_l1 = 0.0;
  double max_slack = 0.0;
  double max_ratio = 0.0;
  double sum_l1 = 0.0;
  int compared = 0;
  int rejected = 0;
  int infeasible = 0;
  int64_t violations = 0;
  for (int t = 0; t < pairs; ++t) {
    RngStream pair_rng = rng.Split(static_cast<uint64_t>(t));
    RngStream draw_rng = pair_rng.Split(0);
    const Neighbor nb = DrawNeighbor(data, options.replacement, draw_rng);
    DPGAUSS_ASSIGN_OR_RETURN(Dataset other, data.WithRow(nb.row, nb.point));
    DPGAUSS_ASSIGN_OR_RETURN(
        auto solver,
        WitnessSolver::Create(other, options.program, c, config.witness));
    DPGAUSS_ASSIGN_OR_RETURN(PotentialTable table,
                             PotentialTable::Build(*solver, extent));
    // Same selection noise on both sides.
    RngStream sel_a = pair_rng.Split(1);
    RngStream sel_b = pair_rng.Split(1);
    DPGAUSS_ASSIGN_OR_RETURN(
        SelectionOutcome a,
        SelectOutlierRate(base, eta, budget, config.beta, sel_a, config));
    DPGAUSS_ASSIGN_OR_RETURN(
        SelectionOutcome b,
        SelectOutlierRate(table, eta, budget, config.beta, sel_b, config));
    if (!a.tau.has_value() || !b.tau.has_value()) {
      ++rejected;
      continue;
    }
    const int tau = *a.tau;
    if (!base.Feasible(tau) || !table.Feasible(tau)) {
      ++infeasible;
      continue;
    }
    const WitnessSolution& sa = base.Solution(tau);
    const WitnessSolution& sb = table.Solution(tau);
    const double l1 =
        (sa.weights.Normalized() - sb.weights.Normalized()).lpNorm<1>();
    const double slack = GapSlack(sa, n, eta) + GapSlack(sb, n, eta);
    ++compared;
    sum_l1 += l1;
    max_l1 = std::max(max_l1, l1);
    max_slack = std::max(max_slack, slack);
    max_ratio = std::max(max_ratio, l1 / bound);
    if (l1 > bound + slack) ++violations;
  }
  report.tail_frequency =
      compared > 0 ? static_cast<double>(violations) / compared : 0.0;
  report.mean_loss = compared > 0 ? sum_l1 / compared : 0.0;
  report.tail_lower_99 = ClopperPearsonLower(violations, compared);
  report.tail_upper_99 = ClopperPearsonUpper(violations, compared);
  if (violations > 0) {
    report.verdict = AuditVerdict::kViolated;
  } else if (compared > 0) {
    report.verdict = AuditVerdict::kConsistent;
  } else {
    report.verdict = AuditVerdict::kInconclusive;
    report.warnings.push_back("no pair was accepted on both sides");
  }
  report.AddDiagnostic("L", l);
  report.AddDiagnostic("bound", bound);
  report.AddDiagnostic("max_l1", max_l1);
  report.AddDiagnostic("max_ratio", max_ratio);
  report.AddDiagnostic("max_slack", max_slack);
  report.AddDiagnostic("compared", compared);
  report.AddDiagnostic("rejected", rejected);
  report.AddDiagnostic("infeasible", infeasible);
  report.AddDiagnostic("violations", static_cast<double>(violations));
  report.AddDiagnostic("base_monotonicity_defect",
                       base.monotonicity_defect());
  return report;
}

}  // namespace dpgauss
