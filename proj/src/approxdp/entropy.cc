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

#include "dpgauss/approxdp/entropy.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpgauss {

absl::StatusOr<WeightVector> WeightVector::Create(Eigen::VectorXd w) {
  const int n = static_cast<int>(w.size());
  if (n < 1) return absl::InvalidArgumentError("approxdp: empty weight vector");
  const double cap = 1.0 / n;
  const double slack = 1e-12 * cap;
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(w(i)) || w(i) < -slack || w(i) > cap + slack) {
      return absl::InvalidArgumentError(absl::StrCat(
          "approxdp: weight ", i, " = ", w(i), " outside [0, 1/n]"));
    }
    w(i) = std::clamp(w(i), 0.0, cap);
  }
  return WeightVector(std::move(w));
}

WeightVector WeightVector::Uniform(int n) {
  return WeightVector(Eigen::VectorXd::Constant(n, 1.0 / n));
}

WeightVector WeightVector::ZeroedOut(int i) const {
  Eigen::VectorXd w = w_;
  w(i) = 0.0;
  return WeightVector(std::move(w));
}

absl::StatusOr<double> UnnormalizedEntropy(const Eigen::VectorXd& x) {
  double ent = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double v = x(i);
    if (!(v >= 0.0) || !std::isfinite(v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("approxdp: entropy of negative entry x[", i, "] = ", v));
    }
    if (v > 0.0) ent += v * (1.0 - std::log(v));
  }
  return ent;
}

absl::StatusOr<double> Potential(const Eigen::VectorXd& x) {
  if (x.size() <= 1) {
    return absl::InvalidArgumentError("approxdp: potential needs n >= 2");
  }
  absl::StatusOr<double> ent = UnnormalizedEntropy(x);
  if (!ent.ok()) return ent.status();
  return -*ent / std::log(static_cast<double>(x.size()));
}

absl::StatusOr<double> Potential(const WeightVector& w) {
  return Potential(w.values());
}

double UniformPotential(int n) { return -(1.0 + 1.0 / std::log(n)); }

}  // namespace dpgauss
