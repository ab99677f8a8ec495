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

#ifndef DPGAUSS_MECHANISMS_BUDGET_H_
#define DPGAUSS_MECHANISMS_BUDGET_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace dpgauss {

// Exact nonnegative rational, always in lowest terms.
struct Fraction {
  int64_t num = 0;
  int64_t den = 1;

  static Fraction Of(int64_t num, int64_t den);
  static Fraction One() { return Of(1, 1); }
  static Fraction Zero() { return Of(0, 1); }

  Fraction operator+(const Fraction& other) const;
  Fraction operator*(const Fraction& other) const;
  Fraction operator/(int64_t k) const;
  bool operator==(const Fraction& other) const = default;
  double value() const { return static_cast<double>(num) / den; }
  std::string ToString() const;
};

// An (epsilon, delta) allowance carved out of a root budget. The shares record
// the exact fraction of the root's epsilon and delta this allowance holds.
class PrivacyBudget {
 public:
  static absl::StatusOr<PrivacyBudget> Create(double epsilon, double delta);

  double epsilon() const { return root_epsilon_ * epsilon_share_.value(); }
  double delta() const { return root_delta_ * delta_share_.value(); }
  double root_epsilon() const { return root_epsilon_; }
  double root_delta() const { return root_delta_; }
  const Fraction& epsilon_share() const { return epsilon_share_; }
  const Fraction& delta_share() const { return delta_share_; }

  // k equal parts (epsilon/k, delta/k); their basic composition is *this.
  std::vector<PrivacyBudget> Split(int k) const;
  // Sub-allowance holding the given fractions of this budget.
  PrivacyBudget Part(Fraction epsilon_part, Fraction delta_part) const;

 private:
  PrivacyBudget(double eps, double delta, Fraction eps_share,
                Fraction delta_share)
      : root_epsilon_(eps),
        root_delta_(delta),
        epsilon_share_(eps_share),
        delta_share_(delta_share) {}

  double root_epsilon_;
  double root_delta_;
  Fraction epsilon_share_;
  Fraction delta_share_;
};

struct LedgerEntry {
  std::string mechanism;
  std::string note;
  double epsilon = 0.0;
  double delta = 0.0;
  Fraction epsilon_share;
  Fraction delta_share;
};

// Append-only record of spends against one root budget. Single writer.
class BudgetLedger {
 public:
  BudgetLedger() = default;
  BudgetLedger(double root_epsilon, double root_delta)
      : root_epsilon_(root_epsilon), root_delta_(root_delta) {}
  explicit BudgetLedger(const PrivacyBudget& root)
      : BudgetLedger(root.root_epsilon(), root.root_delta()) {}

  void Charge(const PrivacyBudget& budget, std::string mechanism,
              std::string note = "");

  const std::vector<LedgerEntry>& entries() const { return entries_; }
  Fraction epsilon_share_total() const;
  Fraction delta_share_total() const;
  double epsilon_spent() const {
    return root_epsilon_ * epsilon_share_total().value();
  }
  double delta_spent() const {
    return root_delta_ * delta_share_total().value();
  }
  double root_epsilon() const { return root_epsilon_; }
  double root_delta() const { return root_delta_; }
  // Shares sum to exactly one for both epsilon and delta (delta share is
  // ignored when the root delta is zero).
  bool TotalsMatchRoot() const;

 private:
  double root_epsilon_ = 0.0;
  double root_delta_ = 0.0;
  std::vector<LedgerEntry> entries_;
};

}  // namespace dpgauss

#endif  // DPGAUSS_MECHANISMS_BUDGET_H_
