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

#ifndef DPGAUSS_CORE_GAUSSIAN_H_
#define DPGAUSS_CORE_GAUSSIAN_H_

#include <optional>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "dpgauss/core/dataset.h"
#include "dpgauss/core/psd_matrix.h"
#include "dpgauss/core/rng.h"

namespace dpgauss {

struct GaussianParams {
  Eigen::VectorXd mean;
  PsdMatrix covariance;

  static absl::StatusOr<GaussianParams> Create(Eigen::VectorXd mean,
                                               PsdMatrix covariance);
};

// n draws from N(mean, cov) using the symmetric square root of cov.
absl::StatusOr<Dataset> SampleGaussian(const GaussianParams& params, int n,
                                       RngStream& rng);

// Haar-random orthogonal d x d matrix.
Eigen::MatrixXd RandomOrthogonal(int d, RngStream& rng);

// Q diag(lambda) Q^T with Q Haar-random and lambda log-spaced from 1 to kappa
// (all ones when d = 1 or kappa = 1).
absl::StatusOr<PsdMatrix> RandomCovariance(int d, double kappa, RngStream& rng);

// (1/n) sum (x_i - c)(x_i - c)^T; about the origin when center is omitted.
absl::StatusOr<PsdMatrix> EmpiricalCovariance(
    const Dataset& data,
    const std::optional<Eigen::VectorXd>& center = std::nullopt);

// Same as above without the PSD wrapper; exactly symmetric.
Eigen::MatrixXd SecondMoment(const Eigen::MatrixXd& points,
                             const Eigen::VectorXd& center);

}  // namespace dpgauss

#endif  // DPGAUSS_CORE_GAUSSIAN_H_
