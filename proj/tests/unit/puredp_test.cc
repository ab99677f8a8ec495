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
#include <memory>

#include "dpgauss/core/gaussian.h"
#include "dpgauss/core/metrics.h"
#include "dpgauss/puredp/estimators.h"
#include "dpgauss/puredp/oracles.h"
#include "gtest/gtest.h"

namespace dpgauss {
namespace {

Dataset Sample(const Eigen::VectorXd& mu, const PsdMatrix& sigma, int n,
               uint64_t seed) {
  RngStream r(seed);
  return *SampleGaussian(*GaussianParams::Create(mu, sigma), n, r);
}

Eigen::VectorXd Diag(int d, double first) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(d);
  v(0) = first;
  return v;
}

TEST(OracleTest, FactoryNames) {
  for (const char* name : {"non_private", "clip_laplace"}) {
    auto o = MakeOracle(name);
    ASSERT_TRUE(o.ok()) << name;
    EXPECT_EQ((*o)->name(), name);
  }
  EXPECT_TRUE((*MakeOracle("clip_laplace"))->is_private());
  EXPECT_FALSE(MakeOracle("nope").ok());
}

TEST(OracleTest, InjectedErrorHasExactNorm) {
  auto data = Sample(Eigen::VectorXd::Zero(4), PsdMatrix::Identity(4), 100, 1);
  InjectedErrorOracle o;
  RngStream r(2);
  auto est = *o.Estimate(data, 10.0, 0.3, 0.1, 1.0, r);
  EXPECT_NEAR((est - data.Mean()).norm(), 0.3, 1e-12);
  auto exact = *InjectedErrorOracle::Exact()->Estimate(data, 10, 0.3, 0.1, 1, r);
  EXPECT_NEAR((exact - data.Mean()).norm(), 0.0, 1e-12);
}

TEST(OracleTest, ClipLaplaceAccurateAtLargeN) {
  auto data = Sample(Eigen::VectorXd::Constant(3, 2.0), PsdMatrix::Identity(3),
                     200000, 3);
  ClipLaplaceMean o;
  RngStream r(4);
  auto est = *o.Estimate(data, 10.0, 0.1, 0.1, 1.0, r);
  EXPECT_LE((est - Eigen::VectorXd::Constant(3, 2.0)).norm(), 0.1);
}

TEST(MatrixMeanTest, ExactOracleGivesSecondMoment) {
  auto data = Sample(Eigen::VectorXd::Zero(3), PsdMatrix::Identity(3), 5000, 5);
  RngStream r(6);
  auto est = MatrixMean(data, 1.0, 0.1, 0.1, 1.0,
                        *InjectedErrorOracle::Exact(), r);
  ASSERT_TRUE(est.ok());
  Eigen::MatrixXd m = SecondMoment(data.points(), Eigen::VectorXd::Zero(3));
  EXPECT_LE((est->matrix() - m).norm(), 1e-9);
  EXPECT_LE((est->matrix() - Eigen::MatrixXd::Identity(3, 3)).norm(), 0.15);
}

TEST(MatrixMeanTest, TrimmedMeanWithinTolerance) {
  auto sigma = PsdMatrix::Diagonal(Diag(3, 10.0));
  auto data = Sample(Eigen::VectorXd::Zero(3), sigma, 50000, 7);
  RngStream r(8);
  auto est = *MatrixMean(data, 10.0, 0.1, 0.1, 1.0, NonPrivateTrimmedMean(), r);
  EXPECT_LE((est.matrix() - sigma.matrix()).norm(), 0.01 * 10.0 * 10.0);
}

TEST(WeakPreconditionTest, IdentityStaysBelowThreshold) {
  auto data = Sample(Eigen::VectorXd::Zero(4), PsdMatrix::Identity(4), 20000, 9);
  InjectedErrorOracle o;
  RngStream r(10);
  auto w = WeakPrecondition(data, 20.0, 0.1, 1.0, o, r);
  ASSERT_TRUE(w.ok()) << w.status();
  EXPECT_EQ(w->top_rank, 0);
  EXPECT_LE((w->a - 1.09 * Eigen::MatrixXd::Identity(4, 4)).norm(), 1e-12);
  Eigen::MatrixXd asa = w->a * w->a.transpose();
  EXPECT_NEAR(asa(0, 0), 1.1881, 1e-12);
}

TEST(WeakPreconditionTest, TopDirectionShrinks) {
  const double kappa = 100.0;
  auto sigma = PsdMatrix::Diagonal(Diag(3, kappa));
  auto data = Sample(Eigen::VectorXd::Zero(3), sigma, 40000, 11);
  RngStream r(12);
  auto w = *WeakPrecondition(data, kappa, 0.1, 1.0,
                             *InjectedErrorOracle::Exact(), r);
  EXPECT_EQ(w.top_rank, 1);
  Eigen::MatrixXd asa = w.a * sigma.matrix() * w.a.transpose();
  EXPECT_NEAR(asa(0, 0) / kappa, std::pow(1.09 * 0.9, 2), 2e-3);
  EXPECT_LT(asa(0, 0) / kappa, 0.99);
  EXPECT_NEAR(std::pow(1.09 * 0.9, 2), 0.9624, 1e-4);
}

TEST(WeakPreconditionTest, RejectsSmallKappa) {
  auto data = Sample(Eigen::VectorXd::Zero(2), PsdMatrix::Identity(2), 100, 13);
  RngStream r(14);
  EXPECT_FALSE(WeakPrecondition(data, 10.0, 0.1, 1.0,
                                *InjectedErrorOracle::Exact(), r)
                   .ok());
}

TEST(RecursiveTest, RoundCounts) {
  EXPECT_EQ(RecursiveRounds(15.0), 0);
  EXPECT_EQ(RecursiveRounds(20.0), 0);
  EXPECT_EQ(RecursiveRounds(1000.0),
            static_cast<int>(std::ceil(std::log(50.0) / std::log(100.0 / 99))));
  EXPECT_EQ(RecursiveRounds(1000.0), 390);
}

TEST(RecursiveTest, BelowThresholdIsIdentity) {
  auto data = Sample(Eigen::VectorXd::Zero(3), PsdMatrix::Identity(3), 300, 15);
  RngStream r(16);
  auto b = *PrivacyBudget::Create(1.0, 0.0);
  BudgetLedger ledger(b);
  auto chain = *RecursivePrecondition(data, 15.0, 1.0,
                                      *InjectedErrorOracle::Exact(), r, {},
                                      &ledger, &b);
  EXPECT_TRUE(chain.rounds.empty());
  EXPECT_TRUE(chain.product.isIdentity());
  EXPECT_TRUE(ledger.entries().empty());
}

void ExpectFinalInRange(const PsdMatrix& sigma, double kappa, int n,
                        uint64_t seed) {
  auto data = Sample(Eigen::VectorXd::Zero(sigma.dim()), sigma, n, seed);
  RngStream r(seed + 1);
  auto chain = RecursivePrecondition(data, kappa, 1.0,
                                     *InjectedErrorOracle::Exact(), r);
  ASSERT_TRUE(chain.ok()) << chain.status();
  Eigen::MatrixXd asa = chain->product * sigma.matrix() *
                        chain->product.transpose();
  auto ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(asa).eigenvalues();
  EXPECT_GE(ev.minCoeff(), 1.0 - 1e-9);
  EXPECT_LE(ev.maxCoeff(), 20.0);
  EXPECT_EQ(static_cast<int>(chain->rounds.size()), RecursiveRounds(kappa));
}

TEST(RecursiveTest, IdentityAtKappa40) {
  ExpectFinalInRange(PsdMatrix::Identity(3), 40.0, 70 * 2000, 17);
}

TEST(RecursiveTest, SpikedAtKappa1000) {
  Eigen::VectorXd v(3);
  v << 1000, 1, 1;
  ExpectFinalInRange(PsdMatrix::Diagonal(v), 1000.0, 390 * 1000, 19);
}

TEST(RecursiveTest, TooFewRowsIsError) {
  auto data = Sample(Eigen::VectorXd::Zero(5), PsdMatrix::Identity(5), 100, 21);
  RngStream r(22);
  auto chain = RecursivePrecondition(data, 1000.0, 1.0,
                                     *InjectedErrorOracle::Exact(), r);
  EXPECT_FALSE(chain.ok());
}

TEST(EstimateCovarianceTest, TrivialKappa) {
  auto data = Sample(Eigen::VectorXd::Zero(3), PsdMatrix::Identity(3), 20000, 23);
  RngStream r(24);
  auto rep = EstimateCovariance(data, 1.0, 0.5, 1.0,
                                *InjectedErrorOracle::Exact(), r);
  ASSERT_TRUE(rep.ok()) << rep.status();
  ASSERT_TRUE(rep->covariance.has_value());
  EXPECT_LE(*RelFrobenius(*rep->covariance, PsdMatrix::Identity(3)), 0.1);
}

TEST(EstimateCovarianceTest, ErrorTranslation) {
  // lambda_min(A S A) >= 1 and ||S1 - A S A||_F <= alpha imply
  // rel error <= alpha after undoing A.
  RngStream r(25);
  auto sigma = *RandomCovariance(4, 30.0, r);
  Eigen::MatrixXd a = sigma.InverseSqrt().value() * 1.2;
  Eigen::MatrixXd asa = a * sigma.matrix() * a.transpose();
  Eigen::MatrixXd e = Eigen::MatrixXd::Random(4, 4);
  e = Symmetrize(e);
  e *= 0.3 / e.norm();
  Eigen::MatrixXd ainv = a.inverse();
  auto est = *PsdMatrix::Create(ainv * (asa + e) * ainv.transpose());
  EXPECT_LE(*RelFrobenius(est, sigma), 0.3 + 1e-9);
}

TEST(EstimateMeanTest, ExactPipelineCentered) {
  auto data = Sample(Eigen::VectorXd::Zero(3), PsdMatrix::Identity(3), 20000, 26);
  RngStream r(27);
  auto rep = EstimateMean(data, 1.0, 10.0, 0.5, 1.0,
                          *InjectedErrorOracle::Exact(), r);
  ASSERT_TRUE(rep.ok()) << rep.status();
  EXPECT_LE(rep->mean->norm(), 0.1);
}

TEST(EstimateMeanTest, OffsetMeanWithTrimmedOracle) {
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(10);
  mu(0) = 50.0;
  RngStream g(28);
  auto sigma = *RandomCovariance(10, 50.0, g);
  auto data = Sample(mu, sigma, 100000, 29);
  RngStream r(30);
  auto rep = EstimateMean(data, 50.0, 100.0, 0.5, 1.0, NonPrivateTrimmedMean(),
                          r);
  ASSERT_TRUE(rep.ok()) << rep.status();
  EXPECT_LE(*Mahalanobis(*rep->mean - mu, sigma), 0.5);
}

TEST(EstimateGaussianTest, BothErrorsWithinAlpha) {
  RngStream g(31);
  auto sigma = *RandomCovariance(4, 10.0, g);
  Eigen::VectorXd mu = Eigen::VectorXd::Constant(4, 1.0);
  auto truth = *GaussianParams::Create(mu, sigma);
  int ok = 0;
  for (int s = 0; s < 5; ++s) {
    auto data = Sample(mu, sigma, 60000, 40 + s);
    RngStream r(50 + s);
    auto rep = EstimateGaussian(data, 10.0, 10.0, 0.5, 1.0,
                                NonPrivateTrimmedMean(), false, 0.0, r);
    ASSERT_TRUE(rep.ok()) << rep.status();
    ASSERT_TRUE(AttachTruth(truth, *rep).ok());
    ok += *rep->mean_error <= 0.5 && *rep->cov_error <= 0.5;
    EXPECT_TRUE(rep->ledger.TotalsMatchRoot());
  }
  EXPECT_GE(ok, 4);
}

TEST(EstimateGaussianTest, RobustVariantUsesTighterConstant) {
  PureDpConfig c;
  EXPECT_DOUBLE_EQ(c.round_alpha(), 0.01);
  c.robust = true;
  EXPECT_DOUBLE_EQ(c.round_alpha(), 0.0099);
}

}  // namespace
}  // namespace dpgauss
