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

#ifndef DPGAUSS_CORE_METRICS_H_
#define DPGAUSS_CORE_METRICS_H_

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "dpgauss/core/gaussian.h"
#include "dpgauss/core/psd_matrix.h"

namespace dpgauss {

// ||b^{-1/2} a b^{-1/2} - I||_F.
absl::StatusOr<double> RelFrobenius(const PsdMatrix& a, const PsdMatrix& b);

// ||sigma^{-1/2} x||_2.
absl::StatusOr<double> Mahalanobis(const Eigen::VectorXd& x,
                                   const PsdMatrix& sigma);

struct TvBracket {
  double lower = 0.0;
  double upper = 0.0;  // Already capped at 1.
  double m = 0.0;      // min{1, ||eig(S1^{-1/2} S2 S1^{-1/2}) - 1||_2}
};

// Bracket on TV(N(0, sigma1), N(0, sigma2)): [0.01 m, min(1, 1.5 m)].
absl::StatusOr<TvBracket> TvBounds(const PsdMatrix& sigma1,
                                   const PsdMatrix& sigma2);

struct ParameterErrors {
  double mean_error = 0.0;
  double cov_error = 0.0;
};

absl::StatusOr<ParameterErrors> ComputeParameterErrors(
    const GaussianParams& truth, const GaussianParams& estimate);

// Eigenvalues of b^{-1/2} a b^{-1/2}, ascending.
absl::StatusOr<Eigen::VectorXd> WhitenedSpectrum(const PsdMatrix& a,
                                                 const PsdMatrix& b);

}  // namespace dpgauss

#endif  // DPGAUSS_CORE_METRICS_H_
