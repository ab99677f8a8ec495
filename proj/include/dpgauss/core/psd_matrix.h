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

#ifndef DPGAUSS_CORE_PSD_MATRIX_H_
#define DPGAUSS_CORE_PSD_MATRIX_H_

#include <Eigen/Dense>

#include "absl/status/statusor.h"

namespace dpgauss {

// Eigenvalues below this are treated as zero by every strictly-PD operation.
inline constexpr double kEigenFloor = 1e-100;
// Relative negative-eigenvalue tolerance: lambda >= -kPsdTolerance * trace/d.
inline constexpr double kPsdTolerance = 1e-9;

// Immutable symmetric PSD matrix with a cached eigendecomposition
// (eigenvalues ascending).
class PsdMatrix {
 public:
  // Symmetrizes, clamps eigenvalues in [-tol * trace/d, 0) to zero and rejects
  // non-finite input, clearly indefinite input and the all-zero matrix.
  static absl::StatusOr<PsdMatrix> Create(const Eigen::MatrixXd& m);
  // Exact projection onto the PSD cone (negative eigenvalues set to zero).
  static absl::StatusOr<PsdMatrix> Project(const Eigen::MatrixXd& m);
  static PsdMatrix Identity(int d);
  static PsdMatrix Diagonal(const Eigen::VectorXd& diag);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
  double min_eigenvalue() const { return eigenvalues_(0); }
  double max_eigenvalue() const { return eigenvalues_(eigenvalues_.size() - 1); }
  double trace() const { return eigenvalues_.sum(); }

  Eigen::MatrixXd Sqrt() const;
  // Error if the matrix is not strictly PD above kEigenFloor.
  absl::StatusOr<Eigen::MatrixXd> InverseSqrt() const;
  absl::StatusOr<Eigen::MatrixXd> Inverse() const;
  absl::Status CheckPositiveDefinite() const;

 private:
  PsdMatrix(Eigen::MatrixXd m, Eigen::VectorXd values, Eigen::MatrixXd vectors)
      : matrix_(std::move(m)),
        eigenvalues_(std::move(values)),
        eigenvectors_(std::move(vectors)) {}

  static absl::StatusOr<PsdMatrix> Build(const Eigen::MatrixXd& m,
                                         bool project);

  Eigen::MatrixXd matrix_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

// (M + M^T) / 2.
Eigen::MatrixXd Symmetrize(const Eigen::MatrixXd& m);

}  // namespace dpgauss

#endif  // DPGAUSS_CORE_PSD_MATRIX_H_
