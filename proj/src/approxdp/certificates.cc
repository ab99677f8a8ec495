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

#include "dpgauss/approxdp/certificates.h"

#include <cmath>

#include <Eigen/Dense>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpgauss/approxdp/witness.h"

namespace dpgauss {
namespace {

constexpr double kRelTolerance = 1e-9;
constexpr double kSupportCutoff = 1e-10;

}  // namespace

absl::StatusOr<double> WhitenedFourthMomentTop(const WeightVector& weights,
                                               const Dataset& data,
                                               int max_dim) {
  const int n = data.size();
  const int d = data.dim();
  if (weights.n() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "approxdp: weight vector has n = ", weights.n(), ", data has n = ", n));
  }
  if (d > max_dim) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "approxdp: certificate capacity exceeded: d = ", d, " > cap ", max_dim));
  }
  const double mass = weights.mass();
  if (!(mass > 0.0)) {
    return absl::InvalidArgumentError("approxdp: weight vector has zero mass");
  }
  const Eigen::VectorXd p = weights.values() / mass;
  const Eigen::MatrixXd& y = data.points();
  const Eigen::VectorXd mu = y * p;
  const Eigen::MatrixXd centered = y.colwise() - mu;
  const Eigen::MatrixXd cov =
      centered * p.asDiagonal() * centered.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const double top = eig.eigenvalues().maxCoeff();
  if (!(top > 0.0)) return 0.0;
  int r = 0;
  for (int j = 0; j < d; ++j) {
    if (eig.eigenvalues()(j) > kSupportCutoff * top) ++r;
  }
  Eigen::MatrixXd whiten(r, d);
  for (int j = d - r, row = 0; j < d; ++j, ++row) {
    whiten.row(row) =
        eig.eigenvectors().col(j).transpose() / std::sqrt(eig.eigenvalues()(j));
  }
  const Eigen::MatrixXd z = whiten * centered;  // r x n
  const int dim = r * (r + 1) / 2;
  Eigen::MatrixXd phi(dim, n);
  for (int i = 0; i < n; ++i) {
    phi.col(i) = Svec(z.col(i) * z.col(i).transpose());
  }
  const Eigen::VectorXd m = phi * p;
  phi.colwise() -= m;
  Eigen::MatrixXd scaled = phi * p.cwiseSqrt().asDiagonal();
  Eigen::MatrixXd moment = Eigen::MatrixXd::Zero(dim, dim);
  moment.selfadjointView<Eigen::Lower>().rankUpdate(scaled);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> top_eig(
      moment.selfadjointView<Eigen::Lower>(), Eigen::EigenvaluesOnly);
  return std::max(0.0, top_eig.eigenvalues().maxCoeff());
}

absl::StatusOr<bool> CertifySubgaussian(const WeightVector& weights,
                                        const Dataset& data, double c, int k,
                                        int max_dim) {
  if (k != 2) {
    return absl::UnimplementedError(absl::StrCat(
        "approxdp: unsupported subgaussianity order k = ", k,
        " (only k = 2 is implemented)"));
  }
  if (!(c > 0.0)) {
    return absl::InvalidArgumentError("approxdp: certificate needs C > 0");
  }
  auto top = WhitenedFourthMomentTop(weights, data, max_dim);
  if (!top.ok()) return top.status();
  const double bound = 4.0 * c * c;
  return *top + 1.0 <= bound * (1.0 + kRelTolerance);
}

absl::StatusOr<bool> CheckHypercontractivity(const WeightVector& weights,
                                             const Dataset& data, double c,
                                             int max_dim) {
  if (!(c > 0.0)) {
    return absl::InvalidArgumentError("approxdp: hypercontractivity needs C > 0");
  }
  auto top = WhitenedFourthMomentTop(weights, data, max_dim);
  if (!top.ok()) return top.status();
  return *top <= c * (1.0 + kRelTolerance);
}

}  // namespace dpgauss
