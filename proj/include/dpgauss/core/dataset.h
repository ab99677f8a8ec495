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

#ifndef DPGAUSS_CORE_DATASET_H_
#define DPGAUSS_CORE_DATASET_H_

#include <string>

#include <Eigen/Dense>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dpgauss {

// Ordered multiset of n points in R^d, stored one point per column.
class Dataset {
 public:
  static absl::StatusOr<Dataset> Create(Eigen::MatrixXd points);

  int dim() const { return static_cast<int>(points_.rows()); }
  int size() const { return static_cast<int>(points_.cols()); }
  const Eigen::MatrixXd& points() const { return points_; }
  Eigen::VectorXd point(int i) const { return points_.col(i); }

  // Rows [begin, end).
  Dataset Slice(int begin, int end) const;
  // Copy with row i replaced. Requires a finite vector of matching dimension.
  absl::StatusOr<Dataset> WithRow(int i, const Eigen::VectorXd& x) const;
  Eigen::VectorXd Mean() const;

  // Same n, same d and exactly one differing row.
  static bool Neighboring(const Dataset& a, const Dataset& b);

 private:
  explicit Dataset(Eigen::MatrixXd points) : points_(std::move(points)) {}

  Eigen::MatrixXd points_;
};

// One point per line, comma-separated decimal fields, no header.
absl::StatusOr<Dataset> ParseDataset(const std::string& text);
absl::StatusOr<Dataset> LoadDataset(const std::string& path);
std::string FormatDataset(const Dataset& data);
absl::Status SaveDataset(const Dataset& data, const std::string& path);

}  // namespace dpgauss

#endif  // DPGAUSS_CORE_DATASET_H_
