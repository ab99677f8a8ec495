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

#ifndef DPGAUSS_APPROXDP_WITNESS_H_
#define DPGAUSS_APPROXDP_WITNESS_H_

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "dpgauss/approxdp/entropy.h"
#include "dpgauss/core/dataset.h"
#include "dpgauss/core/psd_matrix.h"

namespace dpgauss {

enum class WitnessProgram {
  // Spectral bound sum_i w_i (y_i - mu)(y_i - mu)^T <= C I, optionally with
  // the degree-4 subgaussian certificate at C/2.
  kMean,
  // Degree-2 hypercontractivity: Cov_p(svec(z z^T)) <= C I for the whitened,
  // centered points z.
  kCovariance,
};

struct WitnessOptions {
  // Accuracy of the returned potential (duality gap / log n).
  double tol = 1e-6;
  // Relative tolerance on each spectral constraint.
  double violation_tol = 1e-5;
  // 0 selects 500 log n.
  int max_iterations = 0;
  // Mean program only: add the degree-4 certificate block at C/2.
  bool subgaussian_certificate = true;
  // Consecutive dual values below the feasibility floor needed to declare
  // the program infeasible.
  int infeasible_streak = 5;
  // Cutting planes per block before they are merged into the eigenbasis of
  // the dual matrix.
  int compress_at = 16;
  // Violated eigenvectors added as cutting planes per outer iteration.
  int planes_per_iteration = 2;
};

struct WitnessCertificate {
  // Largest relative violation (lambda_max - bound) / bound over blocks.
  double max_violation = 0.0;
  // sum_i w_i - (1 - eta).
  double mass_slack = 0.0;
  // Dual objective; an upper bound on Ent for the linearized program.
  double dual_bound = 0.0;
  // (dual_bound - Ent(w)) / log n.
  double duality_gap = 0.0;
  int iterations = 0;
  // Constraint value minus bound, per block.
  std::vector<std::pair<std::string, double>> block_slacks;
};

struct WitnessSolution {
  WeightVector weights = WeightVector::Uniform(1);
  Eigen::VectorXd mean;
  PsdMatrix second_moment = PsdMatrix::Identity(1);
  double potential = std::numeric_limits<double>::infinity();
  bool feasible = false;
  WitnessCertificate certificate;
};

// d(d+1)/2 vector with sqrt(2) on off-diagonal entries, so that
// <svec(A), svec(B)> = <A, B>_F.
Eigen::VectorXd Svec(const Eigen::MatrixXd& m);
Eigen::MatrixXd Unsvec(const Eigen::VectorXd& v, int d);

// Entropy-maximizing weights subject to the program's spectral constraints.
// The solver keeps its dual state between calls, so solving a sequence of
// nearby rates warm-starts.
class WitnessSolver {
 public:
  static absl::StatusOr<std::unique_ptr<WitnessSolver>> Create(
      const Dataset& data, WitnessProgram program, double c,
      const WitnessOptions& options = {});
  ~WitnessSolver();

  absl::StatusOr<WitnessSolution> Solve(double eta);
  // Whether the uniform vector satisfies every constraint (then it is the
  // optimum at every rate).
  absl::StatusOr<bool> UniformFeasible();

  int n() const;
  const Dataset& data() const;
  WitnessProgram program() const;
  double c() const;

 private:
  struct State;
  explicit WitnessSolver(std::unique_ptr<State> state);
  std::unique_ptr<State> state_;
};

absl::StatusOr<WitnessSolution> SolveMeanWitness(
    const Dataset& data, double eta, double c,
    const WitnessOptions& options = {});
absl::StatusOr<WitnessSolution> SolveCovWitness(
    const Dataset& data, double eta, double c,
    const WitnessOptions& options = {});

}  // namespace dpgauss

#endif  // DPGAUSS_APPROXDP_WITNESS_H_
