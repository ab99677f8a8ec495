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

#include "dpgauss/core/metrics.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "dpgauss/core/status_macros.h"

namespace dpgauss {

absl::StatusOr<Eigen::VectorXd> WhitenedSpectrum(const PsdMatrix& a,
                                                 const PsdMatrix& b) {
  if (a.dim() != b.dim()) {
    return absl::InvalidArgumentError("core: dimension mismatch");
  }
  DPGAUSS_ASSIGN_OR_RETURN(const Eigen::MatrixXd w, b.InverseSqrt());
  const Eigen::MatrixXd m = Symmetrize(w * a.matrix() * w);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m,
                                                     Eigen::EigenvaluesOnly);
  return Eigen::VectorXd(eig.eigenvalues());
}

absl::StatusOr<double> RelFrobenius(const PsdMatrix& a, const PsdMatrix& b) {
  DPGAUSS_ASSIGN_OR_RETURN(const Eigen::VectorXd lambda,
                           WhitenedSpectrum(a, b));
  return (lambda.array() - 1.0).matrix().norm();
}

absl::StatusOr<double> Mahalanobis(const Eigen::VectorXd& x,
                                   const PsdMatrix& sigma) {
  if (x.size() != sigma.dim()) {
    return absl::InvalidArgumentError("core: dimension mismatch");
  }
  DPGAUSS_ASSIGN_OR_RETURN(const Eigen::MatrixXd w, sigma.InverseSqrt());
  return (w * x).norm();
}

absl::StatusOr<TvBracket> TvBounds(const PsdMatrix& sigma1,
                                   const PsdMatrix& sigma2) {
  DPGAUSS_RETURN_IF_ERROR(sigma2.CheckPositiveDefinite());
  DPGAUSS_ASSIGN_OR_RETURN(const Eigen::VectorXd lambda,
                           WhitenedSpectrum(sigma2, sigma1));
  TvBracket bracket;
  bracket.m = std::min(1.0, (lambda.array() - 1.0).matrix().norm());
  bracket.lower = 0.01 * bracket.m;
  bracket.upper = std::min(1.0, 1.5 * bracket.m);
  return bracket;
}

absl::StatusOr<ParameterErrors> ComputeParameterErrors(
    const GaussianParams& truth, const GaussianParams& estimate) {
  ParameterErrors errors;
  DPGAUSS_ASSIGN_OR_RETURN(
      errors.mean_error,
      Mahalanobis(truth.mean - estimate.mean, truth.covariance));
  DPGAUSS_ASSIGN_OR_RETURN(
      errors.cov_error, RelFrobenius(estimate.covariance, truth.covariance));
  return errors;
}

}  // namespace dpgauss
