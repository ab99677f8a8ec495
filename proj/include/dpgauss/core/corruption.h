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

#ifndef DPGAUSS_CORE_CORRUPTION_H_
#define DPGAUSS_CORE_CORRUPTION_H_

#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "dpgauss/core/dataset.h"
#include "dpgauss/core/rng.h"

namespace dpgauss {

enum class Adversary { kNone, kReplaceWithPoint, kShiftCluster };

struct CorruptionSpec {
  double eta = 0.0;
  Adversary adversary = Adversary::kNone;
  // kReplaceWithPoint: the point. kShiftCluster: the cluster center.
  Eigen::VectorXd offset;
  // kShiftCluster: outliers are offset + scale * N(0, I).
  double scale = 0.0;

  static CorruptionSpec None();
  static CorruptionSpec ReplaceWithPoint(double eta, Eigen::VectorXd v);
  static CorruptionSpec ShiftCluster(double eta, Eigen::VectorXd offset,
                                     double scale);
};

struct CorruptedDataset {
  Dataset data;
  std::vector<int> replaced;  // Sorted indices of replaced rows.
};

// Replaces exactly floor(eta * n) rows chosen uniformly without replacement.
absl::StatusOr<CorruptedDataset> Corrupt(const Dataset& data,
                                         const CorruptionSpec& spec,
                                         RngStream& rng);

}  // namespace dpgauss

#endif  // DPGAUSS_CORE_CORRUPTION_H_
