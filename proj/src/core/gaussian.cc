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

#include "dpgauss/core/gaussian.h"

#include <cmath>

#include <Eigen/QR>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpgauss {

absl::StatusOr<GaussianParams> GaussianParams::Create(Eigen::VectorXd mean,
                                                      PsdMatrix covariance) {
  if (mean.size() != covariance.dim()) {
    return absl::InvalidArgumentError(
        absl::StrCat("core: mean has dimension ", mean.size(),
                     " but covariance has dimension ", covariance.dim()));
  }
  if (!mean.allFinite()) {
    return absl::InvalidArgumentError("core: mean has non-finite entries");
  }
  return GaussianParams{std::move(mean), std::move(covariance)};
}

absl::StatusOr<Dataset> SampleGaussian(const GaussianParams& params, int n,
                                       RngStream& rng) {
  if (n < 1) return absl::InvalidArgumentError("core: sample count must be >= 1");
  const int d = params.covariance.dim();
  const Eigen::MatrixXd root = params.covariance.Sqrt();
  Eigen::MatrixXd z(d, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) z(j, i) = rng.Normal();
  }
  Eigen::MatrixXd points = root * z;
  points.colwise() += params.mean;
  return Dataset::Create(std::move(points));
}

Eigen::MatrixXd SecondMoment(const Eigen::MatrixXd& points,
                             const Eigen::VectorXd& center) {
  const Eigen::MatrixXd centered = points.colwise() - center;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(points.rows(), points.rows());
  m.selfadjointView<Eigen::Lower>().rankUpdate(centered,
                                              1.0 / points.cols());
  return m.selfadjointView<Eigen::Lower>();
}

absl::StatusOr<PsdMatrix> EmpiricalCovariance(
    const Dataset& data, const std::optional<Eigen::VectorXd>& center) {
  const Eigen::VectorXd c =
      center.has_value() ? *center : Eigen::VectorXd::Zero(data.dim());
  if (c.size() != data.dim()) {
    return absl::InvalidArgumentError("core: center dimension mismatch");
  }
  return PsdMatrix::Project(SecondMoment(data.points(), c));
}

Eigen::MatrixXd RandomOrthogonal(int d, RngStream& rng) {
  Eigen::MatrixXd g(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) g(i, j) = rng.Normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  // Sign fix so that Q is Haar rather than biased by the QR convention.
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

absl::StatusOr<PsdMatrix> RandomCovariance(int d, double kappa,
                                           RngStream& rng) {
  if (d < 1 || !(kappa >= 1.0) || !std::isfinite(kappa)) {
    return absl::InvalidArgumentError(
        "core: random covariance needs d >= 1 and kappa >= 1");
  }
  Eigen::VectorXd lambda(d);
  for (int i = 0; i < d; ++i) {
    lambda(i) = d == 1 ? 1.0 : std::pow(kappa, static_cast<double>(i) / (d - 1));
  }
  const Eigen::MatrixXd q = RandomOrthogonal(d, rng);
  return PsdMatrix::Create(q * lambda.asDiagonal() * q.transpose());
}

}  // namespace dpgauss
