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

#include "dpgauss/core/corruption.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"

namespace dpgauss {

CorruptionSpec CorruptionSpec::None() { return CorruptionSpec{}; }

CorruptionSpec CorruptionSpec::ReplaceWithPoint(double eta, Eigen::VectorXd v) {
  return CorruptionSpec{eta, Adversary::kReplaceWithPoint, std::move(v), 0.0};
}

CorruptionSpec CorruptionSpec::ShiftCluster(double eta, Eigen::VectorXd offset,
                                            double scale) {
  return CorruptionSpec{eta, Adversary::kShiftCluster, std::move(offset),
                        scale};
}

absl::StatusOr<CorruptedDataset> Corrupt(const Dataset& data,
                                         const CorruptionSpec& spec,
                                         RngStream& rng) {
  if (!(spec.eta >= 0.0 && spec.eta < 0.5)) {
    return absl::InvalidArgumentError("core: eta must lie in [0, 1/2)");
  }
  const int n = data.size();
  const int count = static_cast<int>(std::floor(spec.eta * n));
  if (count == 0 || spec.adversary == Adversary::kNone) {
    return CorruptedDataset{data, {}};
  }
  if (spec.offset.size() != data.dim()) {
    return absl::InvalidArgumentError("core: adversary offset dimension mismatch");
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < count; ++i) {
    const int j = i + static_cast<int>(rng.UniformInt(n - i));
    std::swap(order[i], order[j]);
  }
  std::vector<int> replaced(order.begin(), order.begin() + count);
  std::sort(replaced.begin(), replaced.end());

  Eigen::MatrixXd points = data.points();
  for (int index : replaced) {
    Eigen::VectorXd x = spec.offset;
    if (spec.adversary == Adversary::kShiftCluster) {
      for (int j = 0; j < data.dim(); ++j) x(j) += spec.scale * rng.Normal();
    }
    points.col(index) = x;
  }
  auto corrupted = Dataset::Create(std::move(points));
  if (!corrupted.ok()) return corrupted.status();
  return CorruptedDataset{*std::move(corrupted), std::move(replaced)};
}

}  // namespace dpgauss
