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

#ifndef DPGAUSS_APPROXDP_CERTIFICATES_H_
#define DPGAUSS_APPROXDP_CERTIFICATES_H_

#include "absl/status/statusor.h"
#include "dpgauss/approxdp/entropy.h"
#include "dpgauss/core/dataset.h"

namespace dpgauss {

// Cap on d for the d(d+1)/2-dimensional fourth-moment eigenproblem.
inline constexpr int kMaxCertificateDim = 40;

// lambda_max of Cov_p(svec(z z^T)) where p = normalized(weights) and z are the
// centered points whitened by the weighted covariance (pseudo-inverse on its
// support). Zero when the weighted covariance vanishes.
absl::StatusOr<double> WhitenedFourthMomentTop(const WeightVector& weights,
                                               const Dataset& data,
                                               int max_dim = kMaxCertificateDim);

// Degree-4 certificate of 2k-certifiable C-subgaussianity at k = 2:
// lambda_max + 1 <= (2C)^2. Sufficient, since E<z,v>^4 <= lambda_max + 1 for
// unit v in whitened coordinates.
absl::StatusOr<bool> CertifySubgaussian(const WeightVector& weights,
                                        const Dataset& data, double c, int k,
                                        int max_dim = kMaxCertificateDim);

// Degree-2 hypercontractivity at h = 1: lambda_max <= C.
absl::StatusOr<bool> CheckHypercontractivity(const WeightVector& weights,
                                             const Dataset& data, double c,
                                             int max_dim = kMaxCertificateDim);

}  // namespace dpgauss

#endif  // DPGAUSS_APPROXDP_CERTIFICATES_H_
