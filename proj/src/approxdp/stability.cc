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

#include "dpgauss/approxdp/stability.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpgauss/core/status_macros.h"

namespace dpgauss {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

absl::StatusOr<PotentialTable> PotentialTable::Build(WitnessSolver& solver,
                                                     int m_max) {
  const int n = solver.n();
  if (m_max < 0 || m_max > n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "approxdp: table extent ", m_max, " outside [0, ", n, "]"));
  }
  PotentialTable t;
  t.n_ = n;
  t.m_max_ = m_max;
  t.pot_.assign(m_max + 1, kInf);
  t.source_.assign(m_max + 1, -1);
  t.flat_from_ = m_max + 1;

  auto record = [&](WitnessSolution sol) {
    t.solves_++;
    t.max_gap_ = std::max(t.max_gap_, sol.certificate.duality_gap);
    t.solutions_.push_back(std::move(sol));
    return static_cast<int>(t.solutions_.size()) - 1;
  };

  DPGAUSS_ASSIGN_OR_RETURN(WitnessSolution top,
                           solver.Solve(static_cast<double>(m_max) / n));
  if (!top.feasible) {
    t.solves_ = 1;
    t.flat_from_ = 0;
    return t;
  }
  const double excess = 1.0 - top.weights.mass();
  int flat = static_cast<int>(std::ceil(n * excess - 1e-6));
  flat = std::clamp(flat, 0, m_max);
  const double top_pot = top.potential;
  const int top_index = record(std::move(top));
  for (int m = flat; m <= m_max; ++m) {
    t.pot_[m] = top_pot;
    t.source_[m] = top_index;
  }
  t.flat_from_ = flat;
  t.min_feasible_ = flat;
  std::vector<double> raw(m_max + 1, kInf);
  for (int m = flat; m <= m_max; ++m) raw[m] = top_pot;
  for (int m = flat - 1; m >= 0; --m) {
    DPGAUSS_ASSIGN_OR_RETURN(WitnessSolution sol,
                             solver.Solve(static_cast<double>(m) / n));
    if (!sol.feasible) {
      t.solves_++;
      break;
    }
    raw[m] = sol.potential;
    t.pot_[m] = sol.potential;
    t.source_[m] = record(std::move(sol));
    t.min_feasible_ = m;
  }
  // Running minimum from small to large m.
  for (int m = t.min_feasible_ + 1; t.min_feasible_ >= 0 && m <= m_max; ++m) {
    if (t.pot_[m] > t.pot_[m - 1]) {
      t.monotonicity_defect_ =
          std::max(t.monotonicity_defect_, t.pot_[m] - t.pot_[m - 1]);
      t.pot_[m] = t.pot_[m - 1];
      t.source_[m] = t.source_[m - 1];
    }
  }
  return t;
}

bool PotentialTable::Feasible(int m) const {
  return m >= 0 && m <= m_max_ && std::isfinite(pot_[m]);
}

const WitnessSolution& PotentialTable::Solution(int m) const {
  return solutions_[source_[m]];
}

absl::StatusOr<double> Stability(const PotentialTable& table, int tau,
                                 int gamma) {
  const int n = table.n();
  if (gamma < 0 || gamma > tau || tau + gamma > n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "approxdp: stability needs 0 <= gamma <= tau and tau + gamma <= n (tau = ",
        tau, ", gamma = ", gamma, ", n = ", n, ")"));
  }
  if (tau + gamma > table.m_max()) {
    return absl::OutOfRangeError(absl::StrCat(
        "approxdp: potential table covers rates up to ", table.m_max(),
        ", stability needs ", tau + gamma));
  }
  if (!table.Feasible(tau - gamma)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "approxdp: stability left endpoint infeasible (rate ", tau - gamma,
        "/", n, ")"));
  }
  return table.Pot(tau - gamma) - table.Pot(tau + gamma);
}

int ScoreTableExtent(int n, int tau_max, int l) {
  return std::min(n, tau_max + std::min(tau_max, 20 * l));
}

absl::StatusOr<double> Score(const PotentialTable& table, int tau, int l) {
  const int n = table.n();
  if (tau < 0 || tau > n) {
    return absl::InvalidArgumentError(
        absl::StrCat("approxdp: score needs tau in [0, ", n, "], got ", tau));
  }
  if (l < 0) return absl::InvalidArgumentError("approxdp: score needs L >= 0");
  const int cap = std::min({tau, n - tau, 20 * l});
  if (tau + cap > table.m_max()) {
    return absl::OutOfRangeError(absl::StrCat(
        "approxdp: potential table covers rates up to ", table.m_max(),
        ", score at tau = ", tau, " needs ", tau + cap));
  }
  if (!table.Feasible(tau)) return 0.0;
  const double ceiling = 20.0 * l;
  double best = 0.0;
  for (int gamma = 1; gamma <= cap; ++gamma) {
    if (!table.Feasible(tau - gamma)) break;
    const double stab = table.Pot(tau - gamma) - table.Pot(tau + gamma);
    const double value = std::min<double>(gamma, ceiling - n * stab);
    best = std::max(best, value);
    if (ceiling - n * stab <= best) break;  // stab is nondecreasing in gamma
  }
  return best;
}

absl::StatusOr<double> Stability(const Dataset& data, int tau, int gamma,
                                 WitnessProgram program, double c,
                                 const WitnessOptions& options) {
  const int n = data.size();
  if (gamma < 0 || gamma > tau || tau + gamma > n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "approxdp: stability needs 0 <= gamma <= tau and tau + gamma <= n (tau = ",
        tau, ", gamma = ", gamma, ", n = ", n, ")"));
  }
  DPGAUSS_ASSIGN_OR_RETURN(auto solver,
                           WitnessSolver::Create(data, program, c, options));
  DPGAUSS_ASSIGN_OR_RETURN(WitnessSolution right,
                           solver->Solve(static_cast<double>(tau + gamma) / n));
  DPGAUSS_ASSIGN_OR_RETURN(WitnessSolution left,
                           solver->Solve(static_cast<double>(tau - gamma) / n));
  if (!left.feasible) {
    return absl::FailedPreconditionError(absl::StrCat(
        "approxdp: stability left endpoint infeasible (rate ", tau - gamma,
        "/", n, ")"));
  }
  if (!right.feasible) {
    return absl::InternalError(absl::StrCat(
        "approxdp: stability right endpoint infeasible (rate ", tau + gamma,
        "/", n, ") although the left endpoint is feasible"));
  }
  return std::max(0.0, left.potential - right.potential);
}

absl::StatusOr<double> Score(const Dataset& data, int tau, int l,
                             WitnessProgram program, double c,
                             const WitnessOptions& options) {
  const int n = data.size();
  if (tau < 0 || tau > n) {
    return absl::InvalidArgumentError(
        absl::StrCat("approxdp: score needs tau in [0, ", n, "], got ", tau));
  }
  DPGAUSS_ASSIGN_OR_RETURN(auto solver,
                           WitnessSolver::Create(data, program, c, options));
  const int extent = std::min(n, tau + std::min({tau, n - tau, 20 * l}));
  DPGAUSS_ASSIGN_OR_RETURN(PotentialTable table,
                           PotentialTable::Build(*solver, extent));
  return Score(table, tau, l);
}

}  // namespace dpgauss
