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

#ifndef DPGAUSS_PUREDP_ORACLES_H_
#define DPGAUSS_PUREDP_ORACLES_H_

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "dpgauss/core/dataset.h"
#include "dpgauss/core/rng.h"

namespace dpgauss {

// Pluggable pure-DP mean estimator. Contract: for a distribution with
// ||E X|| <= radius and Cov X <= I, the output is within alpha of the mean with
// probability >= 1 - beta, and each call is epsilon-DP.
class PureMeanOracle {
 public:
  virtual ~PureMeanOracle() = default;
  virtual absl::StatusOr<Eigen::VectorXd> Estimate(const Dataset& data,
                                                   double radius, double alpha,
                                                   double beta, double epsilon,
                                                   RngStream& rng) const = 0;
  virtual std::string name() const = 0;
  // False for test substitutes that do not add privacy noise.
  virtual bool is_private() const = 0;
};

// Coordinate-wise trimmed mean. Utility only, not private.
class NonPrivateTrimmedMean : public PureMeanOracle {
 public:
  explicit NonPrivateTrimmedMean(double trim_fraction = 1e-3)
      : trim_fraction_(trim_fraction) {}
  absl::StatusOr<Eigen::VectorXd> Estimate(const Dataset& data, double radius,
                                           double alpha, double beta,
                                           double epsilon,
                                           RngStream& rng) const override;
  std::string name() const override { return "non_private"; }
  bool is_private() const override { return false; }

 private:
  double trim_fraction_;
};

// Projects points onto the ball of radius R + 10 sqrt(D) and adds Laplace noise
// calibrated to the l1 sensitivity of the clipped mean. Pure epsilon-DP.
class ClipLaplaceMean : public PureMeanOracle {
 public:
  absl::StatusOr<Eigen::VectorXd> Estimate(const Dataset& data, double radius,
                                           double alpha, double beta,
                                           double epsilon,
                                           RngStream& rng) const override;
  std::string name() const override { return "clip_laplace"; }
  bool is_private() const override { return true; }
};

// Returns a base mean plus a perturbation of l2 norm exactly alpha. The base is
// the empirical mean unless a fixed target is supplied. The direction comes
// from `direction(base, rng)`; the default is a uniformly random direction.
class InjectedErrorOracle : public PureMeanOracle {
 public:
  using DirectionFn =
      std::function<Eigen::VectorXd(const Eigen::VectorXd& base, RngStream&)>;

  InjectedErrorOracle() = default;
  explicit InjectedErrorOracle(DirectionFn direction,
                               std::optional<Eigen::VectorXd> target = {})
      : direction_(std::move(direction)), target_(std::move(target)) {}

  absl::StatusOr<Eigen::VectorXd> Estimate(const Dataset& data, double radius,
                                           double alpha, double beta,
                                           double epsilon,
                                           RngStream& rng) const override;
  std::string name() const override { return "injected"; }
  bool is_private() const override { return false; }

  // Exact oracle: zero perturbation around the empirical mean.
  static std::unique_ptr<InjectedErrorOracle> Exact();

 private:
  DirectionFn direction_;
  std::optional<Eigen::VectorXd> target_;
  bool exact_ = false;
};

absl::StatusOr<std::unique_ptr<PureMeanOracle>> MakeOracle(
    const std::string& name);

}  // namespace dpgauss

#endif  // DPGAUSS_PUREDP_ORACLES_H_
