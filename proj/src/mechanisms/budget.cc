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

#include "dpgauss/mechanisms/budget.h"

#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpgauss {

Fraction Fraction::Of(int64_t num, int64_t den) {
  const int64_t g = std::gcd(num, den);
  return Fraction{num / g, den / g};
}

Fraction Fraction::operator+(const Fraction& other) const {
  const int64_t l = std::lcm(den, other.den);
  return Of(num * (l / den) + other.num * (l / other.den), l);
}

Fraction Fraction::operator*(const Fraction& other) const {
  const Fraction a = Of(num, other.den);
  const Fraction b = Of(other.num, den);
  return Of(a.num * b.num, a.den * b.den);
}

Fraction Fraction::operator/(int64_t k) const { return Of(num, den * k); }

std::string Fraction::ToString() const { return absl::StrCat(num, "/", den); }

absl::StatusOr<PrivacyBudget> PrivacyBudget::Create(double epsilon,
                                                    double delta) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError("mechanisms: epsilon must be > 0");
  }
  if (!(delta >= 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("mechanisms: delta must lie in [0, 1)");
  }
  return PrivacyBudget(epsilon, delta, Fraction::One(), Fraction::One());
}

std::vector<PrivacyBudget> PrivacyBudget::Split(int k) const {
  std::vector<PrivacyBudget> parts;
  parts.reserve(k);
  for (int i = 0; i < k; ++i) {
    parts.push_back(Part(Fraction::Of(1, k), Fraction::Of(1, k)));
  }
  return parts;
}

PrivacyBudget PrivacyBudget::Part(Fraction epsilon_part,
                                  Fraction delta_part) const {
  return PrivacyBudget(root_epsilon_, root_delta_,
                       epsilon_share_ * epsilon_part,
                       delta_share_ * delta_part);
}

void BudgetLedger::Charge(const PrivacyBudget& budget, std::string mechanism,
                          std::string note) {
  entries_.push_back(LedgerEntry{std::move(mechanism), std::move(note),
                                 budget.epsilon(), budget.delta(),
                                 budget.epsilon_share(), budget.delta_share()});
}

Fraction BudgetLedger::epsilon_share_total() const {
  Fraction total = Fraction::Zero();
  for (const LedgerEntry& e : entries_) total = total + e.epsilon_share;
  return total;
}

Fraction BudgetLedger::delta_share_total() const {
  Fraction total = Fraction::Zero();
  for (const LedgerEntry& e : entries_) total = total + e.delta_share;
  return total;
}

bool BudgetLedger::TotalsMatchRoot() const {
  if (!(epsilon_share_total() == Fraction::One())) return false;
  return root_delta_ == 0.0 || delta_share_total() == Fraction::One();
}

}  // namespace dpgauss
