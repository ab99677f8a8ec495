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

#ifndef DPGAUSS_MECHANISMS_GAUSSIAN_SAMPLING_H_
#define DPGAUSS_MECHANISMS_GAUSSIAN_SAMPLING_H_

#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "dpgauss/core/psd_matrix.h"
#include "dpgauss/core/rng.h"

namespace dpgauss {

// (1/k) sum g_i g_i^T with g_i ~ N(0, sigma).
absl::StatusOr<PsdMatrix> GaussianSamplingMechanism(const PsdMatrix& sigma,
                                                    int k, RngStream& rng);

// Largest relative-Frobenius sensitivity for which releasing k samples is
// (epsilon, delta)-DP: min(eps / sqrt(8 k log(1/delta)), eps / (8 log(1/delta))).
double GaussianSamplingDelta(double epsilon, double delta, int k);

// Largest k with GaussianSamplingDelta(epsilon, delta, k) >= sensitivity, or 0
// when no k qualifies.
int GaussianSamplingMaxK(double epsilon, double delta, double sensitivity);

// Privacy-loss variable log(f1(g)/f2(g)) of the k-sample release, evaluated
// through the eigendecomposition of A = S1^{1/2} S2^{-1} S1^{1/2}.
class PrivacyLoss {
 public:
  static absl::StatusOr<PrivacyLoss> Create(const PsdMatrix& sigma1,
                                            const PsdMatrix& sigma2);

  // Samples are columns of a d x k matrix.
  double Evaluate(const Eigen::MatrixXd& samples) const;
  // Same value from whitened coordinates h_ij (k x d) directly.
  double EvaluateWhitened(const Eigen::MatrixXd& h) const;
  // (k/2) ||A - I||_F ||I - A^{-1}||_F.
  double ExpectationBound(int k) const;

  const Eigen::VectorXd& lambda() const { return lambda_; }

 private:
  PrivacyLoss() = default;

  Eigen::MatrixXd projection_;  // V^T S1^{-1/2}
  Eigen::VectorXd lambda_;
  double log_det_ = 0.0;
};

absl::StatusOr<double> PrivacyLossZ(const PsdMatrix& sigma1,
                                    const PsdMatrix& sigma2,
                                    const std::vector<Eigen::VectorXd>& samples);

}  // namespace dpgauss

#endif  // DPGAUSS_MECHANISMS_GAUSSIAN_SAMPLING_H_
