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

#include "dpgauss/mechanisms/noise.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpgauss {

absl::StatusOr<Eigen::VectorXd> LaplaceMechanism(const Eigen::VectorXd& value,
                                                 double sensitivity_l1,
                                                 double epsilon,
                                                 RngStream& rng) {
  if (!(sensitivity_l1 > 0.0) || !(epsilon > 0.0)) {
    return absl::InvalidArgumentError(
        "mechanisms: Laplace mechanism needs sensitivity > 0 and epsilon > 0");
  }
  const double scale = sensitivity_l1 / epsilon;
  Eigen::VectorXd out = value;
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) += rng.Laplace(scale);
  return out;
}

absl::StatusOr<TruncatedLaplaceParams> TruncatedLaplaceParams::Create(
    double mu, double b) {
  if (!(mu < 0.0) || !std::isfinite(mu)) {
    return absl::InvalidArgumentError(
        absl::StrCat("mechanisms: truncated Laplace needs mu < 0, got ", mu));
  }
  if (!(b > 0.0) || !std::isfinite(b)) {
    return absl::InvalidArgumentError(
        absl::StrCat("mechanisms: truncated Laplace needs b > 0, got ", b));
  }
  return TruncatedLaplaceParams{mu, b};
}

absl::StatusOr<TruncatedLaplaceParams> TruncatedLaplaceParams::ForPrivacy(
    double sensitivity, double epsilon, double delta) {
  if (!(sensitivity > 0.0) || !(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        "mechanisms: truncated Laplace needs sensitivity > 0, epsilon > 0, "
        "delta in (0, 1)");
  }
  return Create(-sensitivity * (1.0 + std::log(1.0 / delta) / epsilon),
                sensitivity / epsilon);
}

double TruncLaplaceCdf(double y, const TruncatedLaplaceParams& params) {
  const double mu = params.mu;
  const double b = params.b;
  if (y >= 0.0) return 1.0;
  const double norm = 2.0 - std::exp(mu / b);
  if (y < mu) return std::exp((y - mu) / b) / norm;
  return (2.0 - std::exp((mu - y) / b)) / norm;
}

absl::StatusOr<double> TruncatedLaplaceSample(
    const TruncatedLaplaceParams& params, RngStream& rng) {
  if (!(params.mu < 0.0) || !(params.b > 0.0)) {
    return absl::InvalidArgumentError(
        "mechanisms: truncated Laplace needs mu < 0 and b > 0");
  }
  const double mu = params.mu;
  const double b = params.b;
  const double norm = 2.0 - std::exp(mu / b);
  const double u = rng.Uniform();
  double y;
  if (u * norm <= 1.0) {
    y = mu + b * std::log(u * norm);
  } else {
    y = mu - b * std::log(2.0 - u * norm);
  }
  return std::min(y, 0.0);
}

absl::StatusOr<double> GaussianMechanismSigma(double sensitivity_l2,
                                              double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "mechanisms: Gaussian mechanism requires epsilon in (0, 1), got ",
        epsilon));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        "mechanisms: Gaussian mechanism requires delta in (0, 1)");
  }
  if (!(sensitivity_l2 > 0.0)) {
    return absl::InvalidArgumentError(
        "mechanisms: Gaussian mechanism requires sensitivity > 0");
  }
  return std::sqrt(2.0 * std::log(1.25 / delta)) * sensitivity_l2 / epsilon;
}

absl::StatusOr<Eigen::VectorXd> GaussianMechanism(const Eigen::VectorXd& value,
                                                  double sensitivity_l2,
                                                  const PrivacyBudget& budget,
                                                  RngStream& rng) {
  auto sigma = GaussianMechanismSigma(sensitivity_l2, budget.epsilon(),
                                      budget.delta());
  if (!sigma.ok()) return sigma.status();
  Eigen::VectorXd out = value;
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) += *sigma * rng.Normal();
  return out;
}

}  // namespace dpgauss
