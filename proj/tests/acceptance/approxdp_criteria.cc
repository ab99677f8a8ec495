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

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "criteria.h"
#include "dpgauss/approxdp/entropy.h"
#include "dpgauss/approxdp/robust.h"
#include "dpgauss/approxdp/stability.h"
#include "dpgauss/approxdp/witness.h"
#include "dpgauss/audit/audit.h"
#include "dpgauss/core/corruption.h"
#include "dpgauss/core/gaussian.h"
#include "dpgauss/core/metrics.h"
#include "dpgauss/mechanisms/report.h"

namespace dpgauss::acceptance {
namespace {

constexpr double kFp = 1e-12;

double Ent(const Eigen::VectorXd& x) { return *UnnormalizedEntropy(x); }

// Scales u in [0, 1]^n to w in [0, cap]^n with total mass `mass` (<= n cap).
Eigen::VectorXd ToMass(const Eigen::VectorXd& u, double cap, double mass) {
  double lo = 0.0, hi = 1.0;
  auto at = [&](double t) { return (u * t).cwiseMin(1.0) * cap; };
  while (at(hi).sum() < mass && hi < 1e200) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (at(mid).sum() < mass ? lo : hi) = mid;
  }
  return at(hi);
}

// Random member of {w in [0, 1/n]^n : 1 - eta <= |w|_1 <= 1}.
Eigen::VectorXd PolytopePoint(int n, double eta, int kind, RngStream& rng) {
  const double mass = 1.0 - eta * rng.Uniform();
  Eigen::VectorXd u(n);
  switch (kind % 4) {
    case 0:  // flat at the box edge
      return Eigen::VectorXd::Constant(n, 1.0 / n);
    case 1:  // as concentrated as the box allows
      u.setZero();
      for (int i = 0; i < n; ++i) u(i) = i < std::ceil(mass * n) ? 1.0 : 0.0;
      return ToMass(u, 1.0 / n, mass);
    case 2:
      for (int i = 0; i < n; ++i) u(i) = rng.Uniform();
      return ToMass(u, 1.0 / n, mass);
    default:
      for (int i = 0; i < n; ++i) u(i) = std::max(std::pow(rng.Uniform(), 4), 1e-12);
      return ToMass(u, 1.0 / n, mass);
  }
}

struct Tally {
  int checked = 0;
  int violated = 0;
  double worst = -1e300;  // largest lhs - rhs
  void Add(double lhs, double rhs) {
    ++checked;
    worst = std::max(worst, lhs - rhs);
    if (lhs > rhs + kFp) ++violated;
  }
  std::string Str() const {
    return absl::StrCat(violated, "/", checked, " violated, worst excess ",
                        worst);
  }
};

}  // namespace

Outcome EntropyProperties() {
  RngStream rng(707);
  Tally zeroing, lower, upper, pinsker, pinsker_dominated, renorm;
  double corrected_lower_worst = -1e300;
  for (int t = 0; t < 10000; ++t) {
    const int n = 2 + static_cast<int>(rng.UniformInt(1999));
    const double eta = 0.5 * rng.Uniform();
    const Eigen::VectorXd x = PolytopePoint(n, eta, t, rng);
    const double ln = std::log(n);
    const double f = -Ent(x) / ln;
    // Zeroing one coordinate.
    const int j = static_cast<int>(rng.UniformInt(n));
    Eigen::VectorXd xt = x;
    xt(j) = 0.0;
    zeroing.Add(-Ent(xt) / ln, f + 1.0 / n + 1.0 / (n * ln));
    // Two-sided bracket as stated.
    lower.Add(-1.0, f);
    upper.Add(f, -(1 - eta) - (1 - eta) / ln);
    // Lower bound that keeps the +|x|_1 term of Ent.
    const double m = x.sum();
    corrected_lower_worst = std::max(
        corrected_lower_worst, -m * (1 + (1 - std::log(m)) / ln) - f);
  }

  // Pinsker replacement on [0, 2/n]^n, c = 10:
  // |Ent(x) - Ent(x')| <= L/n  =>  |x - x'|_1 <= c L / (n log n).
  for (int t = 0; t < 10000; ++t) {
    const int n = 4 + static_cast<int>(rng.UniformInt(1997));
    const double cap = 2.0 / n;
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = cap * rng.Uniform();
    Eigen::VectorXd y = x;
    const int kind = t % 3;
    const int moves = 1 + static_cast<int>(rng.UniformInt(3));
    for (int r = 0; r < moves; ++r) {
      const int a = static_cast<int>(rng.UniformInt(n));
      const int b = static_cast<int>(rng.UniformInt(n));
      if (kind == 0) {
        // Move mass from a to b; swapping values when they allow it.
        const double delta = std::min(y(a), cap - y(b)) * rng.Uniform();
        y(a) -= delta;
        y(b) += delta;
      } else if (kind == 1) {
        y(a) += (cap - y(a)) * rng.Uniform();  // only additions
      } else {
        y(a) = cap * rng.Uniform();
      }
    }
    const double diff = (x - y).lpNorm<1>();
    const double l_over_n = std::abs(Ent(x) - Ent(y));
    const double rhs = 10.0 * l_over_n / std::log(n);
    pinsker.Add(diff, rhs);
    if (kind == 1) pinsker_dominated.Add(diff, rhs);
  }

  // Renormalization: x, y in [0, 1]^n, sums >= n/2, |x - y|_1 <= beta n.
  for (int t = 0; t < 10000; ++t) {
    const int n = 2 + static_cast<int>(rng.UniformInt(999));
    const double beta = 0.1 * rng.Uniform();
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = rng.Uniform();
    const bool up = t % 2 == 1;
    // Sums sit on the n/2 boundary after (down) or before (up) the move.
    x = ToMass(x, 1.0, up ? 0.5 * n : std::min(0.5 * n + beta * n, 0.9 * n));
    // Move beta n of mass, as unevenly as possible.
    Eigen::VectorXd y = x;
    double budget = beta * n;
    for (int i = 0; i < n && budget > 0; ++i) {
      const double room = up ? 1.0 - y(i) : y(i);
      const double step = std::min(room, budget);
      y(i) += up ? step : -step;
      budget -= step;
    }
    if (y.sum() < 0.5 * n - 1e-9) return {false, "renormalization generator left the domain"};
    renorm.Add((x / x.sum() - y / y.sum()).lpNorm<1>(), 6.0 * beta);
  }

  const bool pass = zeroing.violated == 0 && lower.violated == 0 &&
                    upper.violated == 0 && pinsker.violated == 0 &&
                    renorm.violated == 0;
  return {pass,
          absl::StrCat("zeroing: ", zeroing.Str(), "; f >= -1: ", lower.Str(),
                       " (with the |x|_1 term kept: worst excess ",
                       corrected_lower_worst, "); f upper: ", upper.Str(),
                       "; Pinsker c=10: ", pinsker.Str(),
                       " (dominated pairs only: ", pinsker_dominated.Str(),
                       "); renormalization 6 beta: ", renorm.Str())};
}

Outcome ScoreSensitivity() {
  const int n = 16, d = 2;
  const double c = kDefaultMeanC;
  const int l_formula = SelectionWindow(n, 1.0, 1e-5, 0.1, 4.0);
  const std::vector<int> ls = {1, 2, 4, 8, l_formula};
  const std::vector<Eigen::Vector2d> reps = {
      {0, 0}, {1, 1}, {-2, 0.5}, {3, 0}, {0, -5}, {10, 10}, {-30, 2}, {1e3, 0}};
  auto p = GaussianParams::Create(Eigen::VectorXd::Zero(d), PsdMatrix::Identity(d));
  double worst = 0.0, slack = 0.0;
  int comparisons = 0, violations = 0;
  int nonzero = 0;
  for (int b = 0; b < 20; ++b) {
    RngStream rng(100 + b);
    auto data = SampleGaussian(*p, n, rng);
    if (!data.ok()) return {false, data.status().ToString()};
    auto build = [&](const Dataset& ds) -> absl::StatusOr<PotentialTable> {
      auto solver = WitnessSolver::Create(ds, WitnessProgram::kMean, c);
      if (!solver.ok()) return solver.status();
      return PotentialTable::Build(**solver, n);
    };
    auto base = build(*data);
    if (!base.ok()) return {false, base.status().ToString()};
    const double base_slack = n * (2 * base->max_gap() + base->monotonicity_defect());
    // Neighbours: every row replaced by every representative or another row.
    std::vector<Eigen::VectorXd> cands(reps.begin(), reps.end());
    for (int i = 0; i < 3; ++i) cands.push_back(data->point(i));
    for (int i = 0; i < n; ++i) {
      for (const auto& r : cands) {
        auto nd = data->WithRow(i, r);
        auto other = build(*nd);
        if (!other.ok()) return {false, other.status().ToString()};
        const double s =
            base_slack + n * (2 * other->max_gap() + other->monotonicity_defect());
        slack = std::max(slack, s);
        for (int l : ls) {
          for (int tau = 0; tau <= n; ++tau) {
            auto a = Score(*base, tau, l);
            auto bb = Score(*other, tau, l);
            if (!a.ok() || !bb.ok()) return {false, "score failed"};
            const double diff = std::abs(*a - *bb);
            ++comparisons;
            if (diff > 0) ++nonzero;
            worst = std::max(worst, diff);
            if (diff > 6.0 + s) ++violations;
          }
        }
      }
    }
  }
  return {violations == 0 && slack <= 0.5,
          absl::StrCat(comparisons, " score comparisons over L in {1,2,4,8,",
                       l_formula, "}; max |diff| ", worst, " (", nonzero,
                       " nonzero), violations ", violations,
                       "; max solver slack ", slack)};
}

Outcome OutlierRateSelection() {
  const int n = 4000, trials = 100;
  const double eta = 0.2, beta = 0.1;
  auto budget = PrivacyBudget::Create(1.0, 1e-5);
  int rejects = 0;
  int l = 0;
  for (int t = 0; t < trials; ++t) {
    const int d = 3 + t % 3;
    RngStream rng(9000 + t);
    auto p = GaussianParams::Create(Eigen::VectorXd::Zero(d), PsdMatrix::Identity(d));
    auto data = SampleGaussian(*p, n, rng);
    if (!data.ok()) return {false, data.status().ToString()};
    RngStream sel(19000 + t);
    auto out = SelectOutlierRate(*data, eta, *budget, beta, WitnessProgram::kMean,
                                 kDefaultMeanC, sel);
    if (!out.ok()) return {false, out.status().ToString()};
    l = out->l;
    if (!out->tau.has_value()) ++rejects;
  }
  const double freq = static_cast<double>(rejects) / trials;

  // Neighbour audit on a clean base and, for information, on a base with a
  // shifted cluster where the witness actually has to down-weight.
  auto neighbour_audit = [&](double shift_eta, uint64_t seed)
      -> absl::StatusOr<AuditReport> {
    RngStream rng(seed);
    auto p = GaussianParams::Create(Eigen::VectorXd::Zero(3), PsdMatrix::Identity(3));
    auto data = SampleGaussian(*p, n, rng);
    if (!data.ok()) return data.status();
    Eigen::VectorXd off = Eigen::VectorXd::Zero(3);
    off(0) = 17.0;
    auto cd = Corrupt(*data,
                      shift_eta > 0 ? CorruptionSpec::ShiftCluster(shift_eta, off, 1.0)
                                    : CorruptionSpec::None(),
                      rng);
    if (!cd.ok()) return cd.status();
    RngStream ar(seed + 1);
    return AuditSolverSensitivity(cd->data, 50, eta, kDefaultMeanC, *budget, ar);
  };
  auto clean = neighbour_audit(0.0, 31337);
  if (!clean.ok()) return {false, clean.status().ToString()};
  auto shifted = neighbour_audit(0.1, 4242);
  if (!shifted.ok()) return {false, shifted.status().ToString()};
  auto diag = [](const AuditReport& r, const char* k) { return *r.Diagnostic(k); };
  const bool pass = freq <= beta && clean->verdict == AuditVerdict::kConsistent;
  return {pass,
          absl::StrCat(
              "REJECT ", rejects, "/", trials, " (L = ", l, ", beta ", beta,
              "); clean audit ", AuditVerdictName(clean->verdict), ": max l1 ",
              diag(*clean, "max_l1"), " vs 120L/n ", diag(*clean, "bound"),
              " + slack ", diag(*clean, "max_slack"), " over ",
              diag(*clean, "compared"), " pairs; shifted-cluster audit (info) ",
              AuditVerdictName(shifted->verdict), ": max l1 ",
              diag(*shifted, "max_l1"), " over ", diag(*shifted, "compared"),
              " pairs")};
}

Outcome RobustMeanEndToEnd() {
  const int d = 15, n = 20000, seeds = 20;
  auto budget = PrivacyBudget::Create(1.0, 1e-5);
  auto p = GaussianParams::Create(Eigen::VectorXd::Zero(d), PsdMatrix::Identity(d));
  Eigen::VectorXd off = Eigen::VectorXd::Zero(d);
  off(0) = 17.0;
  std::string detail;
  bool pass = true;
  for (double eta : {0.0, 0.05, 0.1}) {
    std::vector<double> errs;
    int wins = 0, halted = 0;
    for (int s = 1; s <= seeds; ++s) {
      RngStream rng(s);
      auto data = SampleGaussian(*p, n, rng);
      if (!data.ok()) return {false, data.status().ToString()};
      auto cd = Corrupt(*data,
                        eta > 0 ? CorruptionSpec::ShiftCluster(eta, off, 1.0)
                                : CorruptionSpec::None(),
                        rng);
      if (!cd.ok()) return {false, cd.status().ToString()};
      RngStream er(100 + s);
      auto rep = RobustMean(cd->data, eta, *budget, kDefaultMeanC, er);
      if (!rep.ok()) return {false, rep.status().ToString()};
      const double naive = cd->data.Mean().norm();
      if (!rep->completed()) {
        ++halted;
        errs.push_back(std::numeric_limits<double>::infinity());
        continue;
      }
      if (!rep->ledger.TotalsMatchRoot()) return {false, "ledger mismatch"};
      const double err = rep->mean->norm();
      errs.push_back(err);
      if (err < naive) ++wins;
    }
    const double med = Median(errs);
    if (eta == 0.0) {
      pass = pass && med <= 0.3;
      detail += absl::StrCat("eta 0: median ", med, " (<= 0.3), halted ", halted);
    } else {
      pass = pass && wins >= 18;
      detail += absl::StrCat("; eta ", eta, ": robust < naive ", wins, "/",
                             seeds, ", median ", med, ", halted ", halted);
    }
  }
  return {pass, detail};
}

Outcome RobustCovarianceEndToEnd() {
  const int d = 5, n = 10000, seeds = 20;
  auto budget = PrivacyBudget::Create(1.0, 1e-5);
  auto k = RobustCovarianceMaxK(n, *budget, kDefaultCovC);
  if (!k.ok()) return {false, k.status().ToString()};
  const double bound = 0.5 + std::sqrt(double(d * d) / *k);
  auto p = GaussianParams::Create(Eigen::VectorXd::Zero(d), PsdMatrix::Identity(d));
  std::string detail = absl::StrCat("k = ", *k);
  bool pass = true;
  for (double eta : {0.0, 0.05}) {
    std::vector<double> errs;
    int wins = 0, halted = 0;
    for (int s = 1; s <= seeds; ++s) {
      RngStream rng(s);
      auto data = SampleGaussian(*p, n, rng);
      if (!data.ok()) return {false, data.status().ToString()};
      auto cd = Corrupt(*data,
                        eta > 0 ? CorruptionSpec::ShiftCluster(
                                      eta, Eigen::VectorXd::Zero(d),
                                      100.0 / std::sqrt(d))
                                : CorruptionSpec::None(),
                        rng);
      if (!cd.ok()) return {false, cd.status().ToString()};
      RngStream er(100 + s);
      auto rep = RobustCovariance(cd->data, eta, *budget, kDefaultCovC, *k, er);
      if (!rep.ok()) return {false, rep.status().ToString()};
      auto naive_cov = EmpiricalCovariance(cd->data);
      if (!naive_cov.ok()) return {false, naive_cov.status().ToString()};
      const double naive = *RelFrobenius(*naive_cov, p->covariance);
      if (!rep->completed()) {
        ++halted;
        errs.push_back(std::numeric_limits<double>::infinity());
        continue;
      }
      if (!rep->ledger.TotalsMatchRoot()) return {false, "ledger mismatch"};
      const double err = *RelFrobenius(*rep->covariance, p->covariance);
      errs.push_back(err);
      if (err < naive) ++wins;
    }
    const double worst = *std::max_element(errs.begin(), errs.end());
    if (eta == 0.0) {
      pass = pass && worst <= bound;
      detail += absl::StrCat("; eta 0: max ", worst, ", median ", Median(errs),
                             " (bound ", bound, " every seed), halted ", halted);
    } else {
      pass = pass && wins >= 18;
      detail += absl::StrCat("; eta ", eta, ": robust < naive ", wins, "/",
                             seeds, ", median ", Median(errs), ", halted ",
                             halted);
    }
  }
  return {pass, detail};
}

}  // namespace dpgauss::acceptance
