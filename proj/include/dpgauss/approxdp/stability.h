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

#ifndef DPGAUSS_APPROXDP_STABILITY_H_
#define DPGAUSS_APPROXDP_STABILITY_H_

#include <vector>

#include "absl/status/statusor.h"
#include "dpgauss/approxdp/witness.h"
#include "dpgauss/core/dataset.h"

namespace dpgauss {

// Optimal potentials at the rates m/n, m = 0..m_max, of one witness program.
// Pot is replaced by its running minimum over smaller m, which the exact
// optimum satisfies since the feasible sets are nested; infeasible rates hold
// +inf. Rates at or above the first one whose optimum leaves the mass
// constraint slack share that optimum and are not re-solved.
class PotentialTable {
 public:
  static absl::StatusOr<PotentialTable> Build(WitnessSolver& solver, int m_max);

  int n() const { return n_; }
  int m_max() const { return m_max_; }
  // Requires 0 <= m <= m_max.
  double Pot(int m) const { return pot_[m]; }
  bool Feasible(int m) const;
  // Solution attaining Pot(m); requires Feasible(m).
  const WitnessSolution& Solution(int m) const;
  // Smallest feasible m, or -1.
  int min_feasible() const { return min_feasible_; }
  int flat_from() const { return flat_from_; }
  int solves() const { return solves_; }
  // Largest duality gap (potential units) over the solves.
  double max_gap() const { return max_gap_; }
  // Largest amount by which a solve exceeded the running minimum.
  double monotonicity_defect() const { return monotonicity_defect_; }

 private:
  PotentialTable() = default;

  int n_ = 0;
  int m_max_ = 0;
  int min_feasible_ = -1;
  int flat_from_ = 0;
  int solves_ = 0;
  double max_gap_ = 0.0;
  double monotonicity_defect_ = 0.0;
  std::vector<double> pot_;
  std::vector<int> source_;  // index into solutions_, -1 when infeasible
  std::vector<WitnessSolution> solutions_;
};

// Pot((tau - gamma)/n) - Pot((tau + gamma)/n). Requires tau + gamma <= m_max.
absl::StatusOr<double> Stability(const PotentialTable& table, int tau,
                                 int gamma);

// 0 if infeasible at tau, else the max over gamma in [0, min(tau, n - tau)]
// with tau - gamma feasible of min{gamma, 20L - n Stab(tau, gamma)}. Only
// gamma <= 20L can attain the max, so the table must cover tau + min(., 20L).
absl::StatusOr<double> Score(const PotentialTable& table, int tau, int l);

// Rates a score scan over tau in [0, tau_max] touches.
int ScoreTableExtent(int n, int tau_max, int l);

// One-off versions that solve the programs directly.
absl::StatusOr<double> Stability(const Dataset& data, int tau, int gamma,
                                 WitnessProgram program, double c,
                                 const WitnessOptions& options = {});
absl::StatusOr<double> Score(const Dataset& data, int tau, int l,
                             WitnessProgram program, double c,
                             const WitnessOptions& options = {});

}  // namespace dpgauss

#endif  // DPGAUSS_APPROXDP_STABILITY_H_
