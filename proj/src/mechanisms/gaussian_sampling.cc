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

#include "dpgauss/mechanisms/gaussian_sampling.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "dpgauss/core/status_macros.h"

namespace dpgauss {

absl::StatusOr<PsdMatrix> GaussianSamplingMechanism(const PsdMatrix& sigma,
                                                    int k, RngStream& rng) {
  if (k < 1) return absl::InvalidArgumentError("mechanisms: k must be >= 1");
  const int d = sigma.dim();
  const Eigen::MatrixXd root = sigma.Sqrt();
  Eigen::MatrixXd z(d, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < d; ++j) z(j, i) = rng.Normal();
  }
  const Eigen::MatrixXd g = root * z;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  m.selfadjointView<Eigen::Lower>().rankUpdate(g, 1.0 / k);
  return PsdMatrix::Project(m.selfadjointView<Eigen::Lower>());
}

double GaussianSamplingDelta(double epsilon, double delta, int k) {
  const double log_term = std::log(1.0 / delta);
  return std::min(epsilon / std::sqrt(8.0 * k * log_term),
                  epsilon / (8.0 * log_term));
}

int GaussianSamplingMaxK(double epsilon, double delta, double sensitivity) {
  const double log_term = std::log(1.0 / delta);
  if (epsilon / (8.0 * log_term) < sensitivity) return 0;
  const double bound =
      std::pow(epsilon / sensitivity, 2) / (8.0 * log_term);
  int k = static_cast<int>(std::floor(std::min(bound, 1e9)));
  while (k > 0 && GaussianSamplingDelta(epsilon, delta, k) < sensitivity) --k;
  while (GaussianSamplingDelta(epsilon, delta, k + 1) >= sensitivity &&
         k < 1000000000) {
    ++k;
  }
  return k;
}

absl::StatusOr<PrivacyLoss> PrivacyLoss::Create(const PsdMatrix& sigma1,
                                                const PsdMatrix& sigma2) {
  if (sigma1.dim() != sigma2.dim()) {
    return absl::InvalidArgumentError("mechanisms: dimension mismatch");
  }
  DPGAUSS_ASSIGN_OR_RETURN(const Eigen::MatrixXd w1, sigma1.InverseSqrt());
  DPGAUSS_ASSIGN_OR_RETURN(const Eigen::MatrixXd inv2, sigma2.Inverse());
  const Eigen::MatrixXd root1 = sigma1.Sqrt();
  const Eigen::MatrixXd a = Symmetrize(root1 * inv2 * root1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
  PrivacyLoss loss;
  loss.lambda_ = eig.eigenvalues();
  if (loss.lambda_.minCoeff() <= 0.0) {
    return absl::InvalidArgumentError("mechanisms: singular privacy-loss form");
  }
  loss.projection_ = eig.eigenvectors().transpose() * w1;
  loss.log_det_ = loss.lambda_.array().log().sum();
  return loss;
}

double PrivacyLoss::EvaluateWhitened(const Eigen::MatrixXd& h) const {
  const double quad =
      (h.array().square().rowwise() * (lambda_.array() - 1.0).transpose())
          .sum();
  return 0.5 * (quad - h.rows() * log_det_);
}

double PrivacyLoss::Evaluate(const Eigen::MatrixXd& samples) const {
  const Eigen::MatrixXd h = (projection_ * samples).transpose();
  return EvaluateWhitened(h);
}

double PrivacyLoss::ExpectationBound(int k) const {
  const double a = (lambda_.array() - 1.0).matrix().norm();
  const double b = (1.0 - lambda_.array().inverse()).matrix().norm();
  return 0.5 * k * a * b;
}

absl::StatusOr<double> PrivacyLossZ(const PsdMatrix& sigma1,
                                    const PsdMatrix& sigma2,
                                    const std::vector<Eigen::VectorXd>& samples) {
  DPGAUSS_ASSIGN_OR_RETURN(const PrivacyLoss loss,
                           PrivacyLoss::Create(sigma1, sigma2));
  Eigen::MatrixXd g(sigma1.dim(), samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].size() != sigma1.dim()) {
      return absl::InvalidArgumentError("mechanisms: sample dimension mismatch");
    }
    g.col(i) = samples[i];
  }
  return loss.Evaluate(g);
}

}  // namespace dpgauss
