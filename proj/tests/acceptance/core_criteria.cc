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

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "criteria.h"
#include "dpgauss/cli/config.h"
#include "dpgauss/cli/runner.h"
#include "dpgauss/core/gaussian.h"
#include "dpgauss/core/metrics.h"

namespace dpgauss::acceptance {
namespace {

double Phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// TV(N(0, 1), N(0, s)) from the two density crossing points.
double Tv1d(double s) {
  if (s == 1.0) return 0.0;
  const double lo = std::min(1.0, s), hi = std::max(1.0, s);
  const double x = std::sqrt(lo * hi * std::log(hi / lo) / (hi - lo));
  return 2.0 * (Phi(x / std::sqrt(lo)) - Phi(x / std::sqrt(hi)));
}

// TV(N(0, I_2), N(0, diag(l1, l2))) by trapezoid quadrature on a product grid.
double Tv2d(double l1, double l2, int points) {
  auto axis = [&](double l, std::vector<double>& p, std::vector<double>& q,
                  double& h) {
    const double r = 12.0 * std::max(1.0, std::sqrt(l));
    h = 2 * r / (points - 1);
    p.resize(points);
    q.resize(points);
    for (int i = 0; i < points; ++i) {
      const double x = -r + i * h;
      const double w = (i == 0 || i == points - 1) ? 0.5 : 1.0;
      p[i] = w * std::exp(-0.5 * x * x) / std::sqrt(2 * M_PI);
      q[i] = w * std::exp(-0.5 * x * x / l) / std::sqrt(2 * M_PI * l);
    }
  };
  std::vector<double> px, qx, py, qy;
  double hx, hy;
  axis(l1, px, qx, hx);
  axis(l2, py, qy, hy);
  double sum = 0.0;
  for (int i = 0; i < points; ++i)
    for (int j = 0; j < points; ++j) sum += std::abs(px[i] * py[j] - qx[i] * qy[j]);
  return 0.5 * sum * hx * hy;
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Outcome TvBracketCheck() {
  RngStream rng(1212);
  int outside = 0, m_mismatch = 0;
  double worst_lo_ratio = 1e300, worst_hi_ratio = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int d = 1 + t % 2;
    const double kappa = std::exp(std::log(100.0) * rng.Uniform());
    auto s1 = RandomCovariance(d, kappa, rng);
    if (!s1.ok()) return {false, s1.status().ToString()};
    // Relative perturbation from 1e-4 up to order one.
    const double scale = std::pow(10.0, -4.0 + 4.5 * rng.Uniform());
    Eigen::MatrixXd e(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) e(i, j) = rng.Normal();
    e = scale * Symmetrize(e);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ee(e);
    if (ee.eigenvalues().minCoeff() <= -0.9) e *= 0.9 / -ee.eigenvalues().minCoeff();
    const Eigen::MatrixXd root = s1->Sqrt();
    auto s2 = PsdMatrix::Create(
        Symmetrize(root * (Eigen::MatrixXd::Identity(d, d) + e) * root));
    if (!s2.ok()) return {false, s2.status().ToString()};
    // Whitened spectrum, computed here independently of the library.
    const Eigen::MatrixXd w = *s1->InverseSqrt();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        Symmetrize(w * s2->matrix() * w.transpose()));
    const Eigen::VectorXd lam = es.eigenvalues();
    const double m = std::min(1.0, (lam.array() - 1.0).matrix().norm());
    auto br = TvBounds(*s1, *s2);
    if (!br.ok()) return {false, br.status().ToString()};
    if (std::abs(br->m - m) > 1e-9 * std::max(1.0, m)) ++m_mismatch;
    if (d == 2) {
      // Quadrature against the closed form on a pair with one unit axis.
      const double q = Tv2d(1.0, lam(1), 3000), exact = Tv1d(lam(1));
      if (std::abs(q - exact) > 1e-4 * exact + 1e-9) {
        return {false, absl::StrCat("quadrature ", q, " vs closed form ", exact)};
      }
    }
    const double tv = d == 1 ? Tv1d(lam(0)) : Tv2d(lam(0), lam(1), 3000);
    const double lo = 0.01 * m, hi = std::min(1.0, 1.5 * m);
    if (tv < lo || tv > hi) ++outside;
    worst_lo_ratio = std::min(worst_lo_ratio, tv / m);
    worst_hi_ratio = std::max(worst_hi_ratio, tv / m);
  }
  return {outside == 0 && m_mismatch == 0,
          absl::StrCat("100 pairs (d = 1 closed form, d = 2 3000^2 grid): ",
                       outside, " outside [0.01 m, min(1, 1.5 m)]; TV/m in [",
                       worst_lo_ratio, ", ", worst_hi_ratio, "]; ", m_mismatch,
                       " library m mismatches")};
}

Outcome BudgetLedgerAndGolden() {
  struct Case {
    Pipeline pipeline;
    int d, n;
  };
  const std::vector<Case> cases = {
      {Pipeline::kPureCov, 3, 20000},     {Pipeline::kPureMean, 3, 20000},
      {Pipeline::kPureGaussian, 3, 40000}, {Pipeline::kApproxMean, 3, 4000},
      {Pipeline::kApproxCov, 3, 10000},   {Pipeline::kGaussSampling, 3, 1000},
  };
  int completed = 0, bad = 0, halted = 0;
  std::string bad_names;
  for (const Case& cs : cases) {
    ExperimentConfig c;
    c.pipeline = cs.pipeline;
    c.d = cs.d;
    c.n = cs.n;
    c.seeds = {1, 2, 3};
    c.kappa = 10.0;  // no preconditioning rounds, so clip_laplace keeps up
    if (cs.pipeline == Pipeline::kApproxMean || cs.pipeline == Pipeline::kApproxCov) {
      c.eta = 0.05;
    }
    auto run = dpgauss::Run(c);
    if (!run.ok()) return {false, absl::StrCat(PipelineName(cs.pipeline), ": ",
                                               run.status().ToString())};
    const bool pure = cs.pipeline == Pipeline::kPureCov ||
                      cs.pipeline == Pipeline::kPureMean ||
                      cs.pipeline == Pipeline::kPureGaussian;
    for (const SeedResult& r : run->results) {
      if (!r.error.empty()) return {false, r.error};
      if (!r.estimation.has_value()) return {false, "missing estimation"};
      if (!r.estimation->completed()) {
        ++halted;
        continue;
      }
      ++completed;
      const BudgetLedger& lg = r.estimation->ledger;
      Fraction eps = Fraction::Zero(), del = Fraction::Zero();
      double eps_abs = 0.0, del_abs = 0.0;
      for (const LedgerEntry& e : lg.entries()) {
        eps = eps + e.epsilon_share;
        del = del + e.delta_share;
        eps_abs += e.epsilon;
        del_abs += e.delta;
      }
      const bool ok = eps == Fraction::One() &&
                      (pure ? del_abs == 0.0 : del == Fraction::One()) &&
                      lg.root_epsilon() == c.epsilon &&
                      lg.root_delta() == (pure ? 0.0 : c.delta) &&
                      std::abs(eps_abs - c.epsilon) <= 1e-12 &&
                      std::abs(del_abs - (pure ? 0.0 : c.delta)) <= 1e-18 &&
                      lg.TotalsMatchRoot();
      if (!ok) {
        ++bad;
        bad_names += absl::StrCat(" ", PipelineName(cs.pipeline));
      }
    }
  }

  // Golden reports: byte-identical to the stored file, across reruns and job
  // counts.
  int golden_bad = 0;
  const std::string dir = DPGAUSS_TESTDATA_DIR;
  for (const std::string name : {"gauss_sampling", "pure_cov", "approx_mean"}) {
    ExperimentConfig c;
    auto st = ApplyConfigFile(c, dir + "/" + name + ".cfg");
    if (!st.ok()) return {false, st.ToString()};
    auto a = dpgauss::Run(c, 1);
    auto b = dpgauss::Run(c, 3);
    if (!a.ok() || !b.ok()) return {false, absl::StrCat(name, ": run failed")};
    const std::string ja = ReportJson(*a);
    if (ja != ReportJson(*b) || ja != Slurp(dir + "/" + name + "_golden.json")) {
      ++golden_bad;
      bad_names += absl::StrCat(" golden:", name);
    }
  }
  return {bad == 0 && golden_bad == 0 && completed > 0,
          absl::StrCat(completed, " completed seeds over 6 pipelines (",
                       halted, " halted), ", bad,
                       " ledgers off the configured budget; 3 golden reports, ",
                       golden_bad, " mismatches", bad_names)};
}

}  // namespace dpgauss::acceptance
