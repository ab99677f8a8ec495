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

#include "dpgauss/puredp/oracles.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpgauss/mechanisms/noise.h"

namespace dpgauss {

absl::StatusOr<Eigen::VectorXd> NonPrivateTrimmedMean::Estimate(
    const Dataset& data, double /*radius*/, double /*alpha*/, double /*beta*/,
    double /*epsilon*/, RngStream& /*rng*/) const {
  const int n = data.size();
  const int trim = static_cast<int>(std::floor(trim_fraction_ * n));
  if (2 * trim >= n) {
    return absl::InvalidArgumentError("puredp: trim fraction removes all points");
  }
  Eigen::VectorXd out(data.dim());
  std::vector<double> column(n);
  for (int j = 0; j < data.dim(); ++j) {
    for (int i = 0; i < n; ++i) column[i] = data.points()(j, i);
    if (trim > 0) {
      std::nth_element(column.begin(), column.begin() + trim, column.end());
      std::nth_element(column.begin() + trim, column.end() - trim - 1,
                       column.end());
    }
    double sum = 0.0;
    for (int i = trim; i < n - trim; ++i) sum += column[i];
    out(j) = sum / (n - 2 * trim);
  }
  return out;
}

absl::StatusOr<Eigen::VectorXd> ClipLaplaceMean::Estimate(
    const Dataset& data, double radius, double /*alpha*/, double /*beta*/,
    double epsilon, RngStream& rng) const {
  if (!(radius >= 0.0) || !(epsilon > 0.0)) {
    return absl::InvalidArgumentError(
        "puredp: clip-Laplace oracle needs radius >= 0 and epsilon > 0");
  }
  const double dim = data.dim();
  const double clip = radius + 10.0 * std::sqrt(dim);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(data.dim());
  for (int i = 0; i < data.size(); ++i) {
    const auto x = data.points().col(i);
    const double norm = x.norm();
    sum += (norm > clip) ? Eigen::VectorXd(x * (clip / norm))
                         : Eigen::VectorXd(x);
  }
  const double n = data.size();
  const double sensitivity = 2.0 * clip * std::sqrt(dim) / n;
  return LaplaceMechanism(sum / n, sensitivity, epsilon, rng);
}

std::unique_ptr<InjectedErrorOracle> InjectedErrorOracle::Exact() {
  auto oracle = std::make_unique<InjectedErrorOracle>();
  oracle->exact_ = true;
  return oracle;
}

absl::StatusOr<Eigen::VectorXd> InjectedErrorOracle::Estimate(
    const Dataset& data, double /*radius*/, double alpha, double /*beta*/,
    double /*epsilon*/, RngStream& rng) const {
  Eigen::VectorXd base = target_.has_value() ? *target_ : data.Mean();
  if (base.size() != data.dim()) {
    return absl::InvalidArgumentError("puredp: injected target dimension mismatch");
  }
  if (exact_ || alpha == 0.0) return base;
  Eigen::VectorXd u;
  if (direction_) {
    u = direction_(base, rng);
  } else {
    u.resize(base.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = rng.Normal();
  }
  const double norm = u.norm();
  if (!(norm > 0.0) || u.size() != base.size()) {
    return absl::InvalidArgumentError("puredp: degenerate injected direction");
  }
  return base + (alpha / norm) * u;
}

absl::StatusOr<std::unique_ptr<PureMeanOracle>> MakeOracle(
    const std::string& name) {
  if (name == "non_private") return std::make_unique<NonPrivateTrimmedMean>();
  if (name == "clip_laplace") return std::make_unique<ClipLaplaceMean>();
  if (name == "exact") {
    return std::unique_ptr<PureMeanOracle>(InjectedErrorOracle::Exact());
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "puredp: unknown oracle '", name,
      "' (expected non_private, clip_laplace or exact)"));
}

}  // namespace dpgauss
