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
#include <string>
#include <vector>

#include "dpgauss/approxdp/certificates.h"
#include "dpgauss/approxdp/entropy.h"
#include "dpgauss/approxdp/robust.h"
#include "dpgauss/approxdp/stability.h"
#include "dpgauss/approxdp/witness.h"
#include "dpgauss/core/corruption.h"
#include "dpgauss/core/gaussian.h"
#include "dpgauss/core/metrics.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace dpgauss {
namespace {

using ::testing::HasSubstr;

Dataset Clean(int d, int n, uint64_t seed) {
  RngStream r(seed);
  return *SampleGaussian(*GaussianParams::Create(Eigen::VectorXd::Zero(d),
                                                 PsdMatrix::Identity(d)),
                         n, r);
}

Eigen::VectorXd E1(int d, double scale) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
  v(0) = scale;
  return v;
}

TEST(EntropyTest, Examples) {
  EXPECT_EQ(*UnnormalizedEntropy(Eigen::VectorXd::Zero(4)), 0.0);
  const int n = 50;
  EXPECT_NEAR(*UnnormalizedEntropy(Eigen::VectorXd::Constant(n, 1.0 / n)),
              std::log(n) + 1.0, 1e-12);
  EXPECT_NEAR(*UnnormalizedEntropy(Eigen::VectorXd::Constant(1, std::exp(-1.0))),
              2.0 / std::exp(1.0), 1e-15);
  EXPECT_FALSE(UnnormalizedEntropy(Eigen::VectorXd::Constant(2, -0.1)).ok());
}

TEST(EntropyTest, UniformPotential) {
  const int n = 100;
  EXPECT_NEAR(*Potential(WeightVector::Uniform(n)), -1.0 - 1.0 / std::log(n),
              1e-12);
  EXPECT_DOUBLE_EQ(UniformPotential(n), -1.0 - 1.0 / std::log(n));
  EXPECT_FALSE(Potential(WeightVector::Uniform(1)).ok());
}

TEST(EntropyTest, ZeroingRaisesPotentialBoundedly) {
  const int n = 100;
  auto w = WeightVector::Uniform(n);
  const double f = *Potential(w);
  const double g = *Potential(w.ZeroedOut(17));
  EXPECT_GT(g, f);
  EXPECT_LE(g - f, 1.0 / n + 1.0 / (n * std::log(n)) + 1e-15);
}

TEST(EntropyTest, PotentialBracketOnRandomWeights) {
  // Every box vector with mass >= 1 - eta lies in
  // [-1 - 1/log n, -(1 - eta)(1 + 1/log n)].
  RngStream r(1);
  for (int t = 0; t < 2000; ++t) {
    const int n = 2 + static_cast<int>(r.UniformInt(200));
    const double eta = 0.5 * r.Uniform();
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w(i) = 1.0 / n;
    // Remove up to eta of the mass from random coordinates.
    double budget = eta;
    for (int k = 0; k < n && budget > 0; ++k) {
      const int i = static_cast<int>(r.UniformInt(n));
      const double cut = std::min({w(i), budget, r.Uniform() / n});
      w(i) -= cut;
      budget -= cut;
    }
    auto wv = *WeightVector::Create(w);
    ASSERT_GE(wv.mass(), 1.0 - eta - 1e-12);
    const double f = *Potential(wv);
    const double ln = std::log(n);
    EXPECT_GE(f, -1.0 - 1.0 / ln - 1e-12);
    EXPECT_LE(f, -(1.0 - eta) * (1.0 + 1.0 / ln) + 1e-12);
  }
}

TEST(EntropyTest, WeightVectorBox) {
  EXPECT_FALSE(WeightVector::Create(Eigen::VectorXd::Constant(4, 0.3)).ok());
  EXPECT_FALSE(WeightVector::Create(Eigen::VectorXd::Constant(4, -0.1)).ok());
  auto w = WeightVector::Create(Eigen::VectorXd::Constant(4, 0.25 + 1e-15));
  ASSERT_TRUE(w.ok());
  EXPECT_LE(w->values().maxCoeff(), 0.25);
}

TEST(EntropyTest, RenormalizationBound) {
  // ||x||_1, ||y||_1 >= 1/2 and ||x - y||_1 <= b imply
  // ||x/|x| - y/|y|||_1 <= 6b.
  RngStream r(2);
  for (int t = 0; t < 2000; ++t) {
    const int n = 20;
    Eigen::VectorXd x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x(i) = r.Uniform() / n;
      y(i) = std::max(0.0, x(i) + (r.Uniform() - 0.5) * 0.2 / n);
    }
    if (x.sum() < 0.5 || y.sum() < 0.5) continue;
    const double b = (x - y).lpNorm<1>();
    EXPECT_LE((x / x.sum() - y / y.sum()).lpNorm<1>(), 6.0 * b + 1e-15);
  }
}

TEST(SvecTest, RoundTripAndInnerProduct) {
  Eigen::MatrixXd a = Symmetrize(Eigen::MatrixXd::Random(4, 4));
  Eigen::MatrixXd b = Symmetrize(Eigen::MatrixXd::Random(4, 4));
  EXPECT_EQ(Svec(a).size(), 10);
  EXPECT_NEAR(Svec(a).dot(Svec(b)), (a.array() * b.array()).sum(), 1e-12);
  EXPECT_TRUE(Unsvec(Svec(a), 4).isApprox(a));
}

TEST(MeanWitnessTest, CleanDataFeasible) {
  auto data = Clean(10, 2000, 3);
  auto sol = SolveMeanWitness(data, 0.1, 10.0);
  ASSERT_TRUE(sol.ok()) << sol.status();
  EXPECT_TRUE(sol->feasible);
  EXPECT_LE(sol->mean.norm(), 0.5);
  EXPECT_GE(sol->weights.mass(), 0.9 - 1e-9);
}

TEST(MeanWitnessTest, PlantedOutliersDownWeighted) {
  const int n = 1000;
  auto data = Clean(5, n, 4);
  RngStream r(5);
  auto c = *Corrupt(data, CorruptionSpec::ReplaceWithPoint(0.1, E1(5, 1e6)), r);
  auto sol = SolveMeanWitness(c.data, 0.1, 10.0);
  ASSERT_TRUE(sol.ok()) << sol.status();
  ASSERT_TRUE(sol->feasible);
  double out = 0;
  for (int i : c.replaced) out += sol->weights(i);
  EXPECT_LE(out, 1e-3);
}

TEST(MeanWitnessTest, EtaZeroCleanIsUniform) {
  auto data = Clean(3, 500, 6);
  auto sol = SolveMeanWitness(data, 0.0, 10.0);
  ASSERT_TRUE(sol.ok()) << sol.status();
  ASSERT_TRUE(sol->feasible);
  EXPECT_LE((sol->weights.values().array() - 1.0 / 500).abs().maxCoeff(),
            1e-15);
  EXPECT_NEAR(sol->potential, UniformPotential(500), 1e-12);
}

TEST(MeanWitnessTest, RejectsBadParameters) {
  auto data = Clean(2, 50, 7);
  EXPECT_FALSE(SolveMeanWitness(data, 1.5, 10.0).ok());
  EXPECT_FALSE(SolveMeanWitness(data, -0.1, 10.0).ok());
  EXPECT_FALSE(SolveMeanWitness(data, 0.1, 0.5).ok());
}

TEST(CovWitnessTest, CleanDataFeasible) {
  auto data = Clean(5, 5000, 8);
  auto sol = SolveCovWitness(data, 0.1, 20.0);
  ASSERT_TRUE(sol.ok()) << sol.status();
  EXPECT_TRUE(sol->feasible);
  EXPECT_LE(*RelFrobenius(sol->second_moment, PsdMatrix::Identity(5)), 0.3);
}

TEST(CovWitnessTest, PlantedOutliersDownWeighted) {
  const int n = 3000;
  auto data = Clean(3, n, 9);
  RngStream r(10);
  auto c = *Corrupt(data,
                    CorruptionSpec::ShiftCluster(0.05, Eigen::VectorXd::Zero(3),
                                                 1e3 / std::sqrt(3.0)),
                    r);
  auto sol = SolveCovWitness(c.data, 0.1, 20.0);
  ASSERT_TRUE(sol.ok()) << sol.status();
  ASSERT_TRUE(sol->feasible);
  double out = 0;
  for (int i : c.replaced) out += sol->weights(i);
  EXPECT_LE(out, 1e-3);
}

TEST(CertificateTest, TwoPointSet) {
  auto data = *ParseDataset("1,0\n-1,0\n");
  auto w = WeightVector::Uniform(2);
  EXPECT_NEAR(*WhitenedFourthMomentTop(w, data), 0.0, 1e-12);
  EXPECT_TRUE(*CertifySubgaussian(w, data, 0.5, 2));
  EXPECT_FALSE(*CertifySubgaussian(w, data, 0.49, 2));
}

TEST(CertificateTest, GaussianThreshold) {
  auto data = Clean(3, 100000, 11);
  auto w = WeightVector::Uniform(100000);
  EXPECT_NEAR(*WhitenedFourthMomentTop(w, data), 2.0, 0.15);
  EXPECT_TRUE(*CertifySubgaussian(w, data, 0.95, 2));
  EXPECT_FALSE(*CertifySubgaussian(w, data, std::sqrt(3.0) / 2 - 0.05, 2));
  EXPECT_TRUE(*CheckHypercontractivity(w, data, 2.3));
  EXPECT_FALSE(*CheckHypercontractivity(w, data, 1.7));
}

TEST(CertificateTest, HeavyPointFails) {
  const int n = 10000;
  auto data = *Clean(3, n, 12).WithRow(0, E1(3, 1e3));
  EXPECT_FALSE(*CertifySubgaussian(WeightVector::Uniform(n), data, 3.0, 2));
}

TEST(CertificateTest, OrderAndCapacityErrors) {
  auto data = Clean(3, 100, 13);
  auto w = WeightVector::Uniform(100);
  auto s = CertifySubgaussian(w, data, 3.0, 3);
  ASSERT_FALSE(s.ok());
  EXPECT_THAT(std::string(s.status().message()), HasSubstr("order"));
  EXPECT_FALSE(CertifySubgaussian(w, data, 3.0, 2, /*max_dim=*/2).ok());
}

PotentialTable BuildTable(const Dataset& data, double c, int m_max) {
  auto solver = *WitnessSolver::Create(data, WitnessProgram::kMean, c);
  return *PotentialTable::Build(*solver, m_max);
}

TEST(StabilityTest, ZeroGammaAndMonotone) {
  const int n = 200;
  auto data = Clean(2, n, 14);
  RngStream r(15);
  auto c = *Corrupt(data, CorruptionSpec::ShiftCluster(0.1, E1(2, 8), 1), r);
  auto t = BuildTable(c.data, 2.5, n / 2);
  EXPECT_LE(t.monotonicity_defect(), 1e-6);
  ASSERT_GE(t.min_feasible(), 0);
  for (int tau = t.min_feasible(); tau <= t.min_feasible() + 30; tau += 10) {
    EXPECT_EQ(*Stability(t, tau, 0), 0.0);
    double prev = 0;
    for (int g = 0; g <= 10; ++g) {
      if (!t.Feasible(tau - g)) break;
      const double s = *Stability(t, tau, g);
      EXPECT_GE(s, prev - 1e-12) << tau << " " << g;
      prev = s;
    }
  }
}

TEST(StabilityTest, CleanDataBoxOptima) {
  const int n = 300;
  auto t = BuildTable(Clean(2, n, 16), 10.0, 60);
  for (int g : {1, 5, 20}) {
    const double s = *Stability(t, 30, g);
    EXPECT_GE(s, -1e-12);
    EXPECT_LE(s, 2.0 * g / n * (1 + 1 / std::log(n)) + 1e-9);
  }
}

TEST(StabilityTest, DirectMatchesTable) {
  auto data = Clean(2, 100, 17);
  auto t = BuildTable(data, 10.0, 40);
  auto s = Stability(data, 20, 5, WitnessProgram::kMean, 10.0);
  ASSERT_TRUE(s.ok()) << s.status();
  EXPECT_NEAR(*s, *Stability(t, 20, 5), 1e-5);
}

TEST(ScoreTest, BoundsAndInfeasibility) {
  const int n = 60;
  auto data = Clean(2, n, 18);
  RngStream r(19);
  // A tight far cluster makes small rates infeasible.
  auto c = *Corrupt(data, CorruptionSpec::ShiftCluster(0.25, E1(2, 50), 0.1), r);
  const int l = 1;
  auto t = BuildTable(c.data, 2.5, n);
  ASSERT_GT(t.min_feasible(), 0);
  for (int tau = 0; tau <= n; ++tau) {
    const double s = *Score(t, tau, l);
    if (!t.Feasible(tau)) {
      EXPECT_EQ(s, 0.0) << tau;
    }
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, std::min(tau, n - tau));
  }
}

TEST(ScoreTest, StableCleanDataReachesL) {
  const int n = 400;
  const int l = 5;
  auto t = BuildTable(Clean(2, n, 20), 10.0, ScoreTableExtent(n, 80, l));
  double best = 0;
  for (int tau = 0; tau <= 80; ++tau) best = std::max(best, *Score(t, tau, l));
  EXPECT_GE(best, l);
}

TEST(ScoreTest, NeighborSensitivity) {
  const int n = 16, l = 1;
  auto base = Clean(2, n, 21);
  auto t0 = BuildTable(base, 2.5, n);
  const Eigen::Vector2d reps[] = {{0, 0}, {3, 0}, {-30, 2}, {1e3, 0}};
  for (int i = 0; i < n; i += 3) {
    for (const auto& x : reps) {
      auto t1 = BuildTable(*base.WithRow(i, x), 2.5, n);
      const double slack =
          n * (2 * std::max(t0.max_gap(), t1.max_gap()) +
               t0.monotonicity_defect() + t1.monotonicity_defect());
      for (int tau = 0; tau <= n; ++tau) {
        EXPECT_LE(std::abs(*Score(t0, tau, l) - *Score(t1, tau, l)),
                  6.0 + slack);
      }
    }
  }
}

TEST(ZeroingTest, ClosureUnderRateIncrease) {
  const int n = 500;
  const double eta = 0.1;
  auto data = Clean(3, n, 22);
  auto sol = *SolveMeanWitness(data, eta, 10.0);
  ASSERT_TRUE(sol.feasible);
  auto top = [&](const Eigen::VectorXd& w) {
    Eigen::MatrixXd m = data.points() * w.asDiagonal() * data.points().transpose();
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues()(2);
  };
  for (int i = 0; i < n; i += 50) {
    auto z = sol.weights.ZeroedOut(i);
    EXPECT_EQ(z(i), 0.0);
    EXPECT_GE(z.mass(), 1.0 - (eta + 1.0 / n) - 1e-12);
    // The unnormalized spectral block only loses a PSD term.
    EXPECT_LE(top(z.values()), top(sol.weights.values()) + 1e-12);
  }
}

TEST(SelectionTest, WindowFormulaAndMinimalSize) {
  const int l = SelectionWindow(4000, 1.0, 1e-5, 0.1, 4.0);
  EXPECT_EQ(l, static_cast<int>(std::ceil(4.0 * std::log(4000 / 1e-6))));
  const int m = MinimalSelectionSize(0.2, 1.0, 1e-5, 0.1, 4.0);
  ASSERT_GT(m, 0);
  EXPECT_GE(static_cast<int>(0.2 * m),
            SelectionWindow(m, 1.0, 1e-5, 0.1, 4.0));
  EXPECT_LT(static_cast<int>(0.2 * (m - 1)),
            SelectionWindow(m - 1, 1.0, 1e-5, 0.1, 4.0));
}

TEST(SelectionTest, TooFewRowsNamesMinimalN) {
  auto data = Clean(2, 100, 23);
  auto b = *PrivacyBudget::Create(1.0, 1e-5);
  RngStream r(24);
  auto out = SelectOutlierRate(data, 0.2, b, 0.1, WitnessProgram::kMean, 2.5, r);
  ASSERT_FALSE(out.ok());
  EXPECT_THAT(std::string(out.status().message()),
              HasSubstr(std::to_string(MinimalSelectionSize(
                  0.2, 1.0, 1e-5, 0.1, 4.0))));
}

TEST(SelectionTest, TauInRangeAndLedgerCharged) {
  const int n = 2000;
  const double eta = 0.2;
  auto data = Clean(3, n, 25);
  auto b = *PrivacyBudget::Create(1.0, 1e-5);
  const int l = SelectionWindow(n, 1.0, 1e-5, 0.1, 4.0);
  auto solver = *WitnessSolver::Create(data, WitnessProgram::kMean, 2.5);
  auto t = *PotentialTable::Build(*solver, ScoreTableExtent(n, 400, l));
  int accepted = 0;
  for (int s = 0; s < 20; ++s) {
    RngStream r(100 + s);
    BudgetLedger ledger(b);
    auto o = SelectOutlierRate(t, eta, b, 0.1, r, {}, &ledger);
    ASSERT_TRUE(o.ok()) << o.status();
    EXPECT_TRUE(ledger.TotalsMatchRoot());
    EXPECT_EQ(o->l, l);
    EXPECT_EQ(o->tau_max, 400);
    if (o->tau.has_value()) {
      ++accepted;
      EXPECT_GE(*o->tau, 0);
      EXPECT_LE(*o->tau, 400);
    }
  }
  EXPECT_GE(accepted, 16);
}

TEST(WitnessCheckTest, NoiseNonpositiveAndCleanPasses) {
  const int n = 4000;
  auto data = Clean(3, n, 26);
  auto sol = *SolveMeanWitness(data, 0.05, 10.0);
  auto b = *PrivacyBudget::Create(1.0 / 3, 1e-5 / 3);
  const int l = SelectionWindow(n, 1.0 / 3, 1e-5 / 3, 0.1, 4.0);
  int pass = 0;
  for (int s = 0; s < 50; ++s) {
    RngStream r(200 + s);
    auto o = WitnessCheck(data, sol, WitnessProgram::kMean, 10.0, l, b, r);
    ASSERT_TRUE(o.ok()) << o.status();
    EXPECT_LE(o->gamma, 0.0);
    if (o->c_prime.has_value()) {
      ++pass;
      EXPECT_LE(*o->c_prime, 10.0);
      EXPECT_NEAR(*o->c_prime, 10.0 + o->gamma, 1e-12);
    }
  }
  EXPECT_GE(pass, 45);
}

TEST(RobustMeanTest, BeatsNaiveUnderShift) {
  const int d = 5, n = 5000;
  const double eta = 0.05;
  auto data = Clean(d, n, 27);
  RngStream r(28);
  auto c = *Corrupt(data, CorruptionSpec::ShiftCluster(eta, E1(d, 17), 1), r);
  auto b = *PrivacyBudget::Create(1.0, 1e-5);
  RngStream pr(29);
  auto rep = RobustMean(c.data, eta, b, kDefaultMeanC, pr);
  ASSERT_TRUE(rep.ok()) << rep.status();
  ASSERT_TRUE(rep->completed());
  EXPECT_LT(rep->mean->norm(), c.data.Mean().norm());
  EXPECT_TRUE(rep->ledger.TotalsMatchRoot());
  EXPECT_DOUBLE_EQ(rep->ledger.epsilon_spent(), 1.0);
}

TEST(RobustMeanTest, PreconditionErrors) {
  auto b = *PrivacyBudget::Create(1.0, 1e-5);
  EXPECT_FALSE(CheckRobustPreconditions(100, 0.05, b).ok());
  EXPECT_TRUE(CheckRobustPreconditions(20000, 0.05, b).ok());
  EXPECT_FALSE(CheckRobustPreconditions(20000, 0.6, b).ok());
}

TEST(RobustCovarianceTest, KCapEnforced) {
  const int n = 10000;
  auto b = *PrivacyBudget::Create(1.0, 1e-5);
  auto kmax = RobustCovarianceMaxK(n, b, kDefaultCovC);
  ASSERT_TRUE(kmax.ok()) << kmax.status();
  ASSERT_GT(*kmax, 0);
  auto data = Clean(3, n, 30);
  RngStream r(31);
  auto rep = RobustCovariance(data, 0.0, b, kDefaultCovC, *kmax + 1, r);
  ASSERT_FALSE(rep.ok());
  EXPECT_THAT(std::string(rep.status().message()),
              HasSubstr(std::to_string(*kmax)));
}

}  // namespace
}  // namespace dpgauss
