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

#ifndef DPGAUSS_APPROXDP_ENTROPY_H_
#define DPGAUSS_APPROXDP_ENTROPY_H_

#include <Eigen/Dense>

#include "absl/status/statusor.h"

namespace dpgauss {

// Per-sample weights with 0 <= w_i <= 1/n.
class WeightVector {
 public:
  // Entries within 1e-12/n of the box are clipped into it.
  static absl::StatusOr<WeightVector> Create(Eigen::VectorXd w);
  static WeightVector Uniform(int n);

  int n() const { return static_cast<int>(w_.size()); }
  const Eigen::VectorXd& values() const { return w_; }
  double operator()(int i) const { return w_(i); }
  double mass() const { return w_.sum(); }
  // w / ||w||_1. Requires positive mass.
  Eigen::VectorXd Normalized() const { return w_ / w_.sum(); }
  // Copy with coordinate i set to zero.
  WeightVector ZeroedOut(int i) const;

 private:
  explicit WeightVector(Eigen::VectorXd w) : w_(std::move(w)) {}
  Eigen::VectorXd w_;
};

// Ent(x) = sum_i x_i log(1/x_i) + x_i, with 0 log(1/0) = 0.
absl::StatusOr<double> UnnormalizedEntropy(const Eigen::VectorXd& x);

// -Ent(w) / log n.
absl::StatusOr<double> Potential(const WeightVector& w);
absl::StatusOr<double> Potential(const Eigen::VectorXd& x);

// Potential of the uniform vector 1/n: -(1 + 1/log n).
double UniformPotential(int n);

}  // namespace dpgauss

#endif  // DPGAUSS_APPROXDP_ENTROPY_H_
