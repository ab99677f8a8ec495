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

#ifndef DPGAUSS_MECHANISMS_NOISE_H_
#define DPGAUSS_MECHANISMS_NOISE_H_

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "dpgauss/core/rng.h"
#include "dpgauss/mechanisms/budget.h"

namespace dpgauss {

// value + iid Lap(0, sensitivity_l1 / epsilon).
absl::StatusOr<Eigen::VectorXd> LaplaceMechanism(const Eigen::VectorXd& value,
                                                 double sensitivity_l1,
                                                 double epsilon,
                                                 RngStream& rng);

// Lap(mu, b) conditioned on being nonpositive.
struct TruncatedLaplaceParams {
  double mu = -1.0;
  double b = 1.0;

  static absl::StatusOr<TruncatedLaplaceParams> Create(double mu, double b);
  // mu = -D(1 + ln(1/delta)/eps), b = D/eps: (eps, delta)-DP for a
  // sensitivity-D statistic.
  static absl::StatusOr<TruncatedLaplaceParams> ForPrivacy(double sensitivity,
                                                           double epsilon,
                                                           double delta);
};

absl::StatusOr<double> TruncatedLaplaceSample(
    const TruncatedLaplaceParams& params, RngStream& rng);

// Exact CDF Pr[X < y].
double TruncLaplaceCdf(double y, const TruncatedLaplaceParams& params);

// sqrt(2 ln(1.25/delta)) * sensitivity / epsilon.
absl::StatusOr<double> GaussianMechanismSigma(double sensitivity_l2,
                                              double epsilon, double delta);

absl::StatusOr<Eigen::VectorXd> GaussianMechanism(const Eigen::VectorXd& value,
                                                  double sensitivity_l2,
                                                  const PrivacyBudget& budget,
                                                  RngStream& rng);

}  // namespace dpgauss

#endif  // DPGAUSS_MECHANISMS_NOISE_H_
