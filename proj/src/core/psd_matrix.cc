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

#include "dpgauss/core/psd_matrix.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpgauss {

Eigen::MatrixXd Symmetrize(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

absl::StatusOr<PsdMatrix> PsdMatrix::Build(const Eigen::MatrixXd& m,
                                           bool project) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    return absl::InvalidArgumentError(
        absl::StrCat("core: PSD matrix must be square and nonempty, got ",
                     m.rows(), "x", m.cols()));
  }
  if (!m.allFinite()) {
    return absl::InvalidArgumentError("core: PSD matrix has non-finite entries");
  }
  Eigen::MatrixXd sym = Symmetrize(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) {
    return absl::InternalError("core: eigendecomposition failed");
  }
  Eigen::VectorXd values = eig.eigenvalues();
  const int d = static_cast<int>(sym.rows());
  const double scale = std::abs(values.sum()) / d;
  bool clamped = false;
  for (int i = 0; i < d; ++i) {
    if (values(i) >= 0.0) continue;
    if (!project && values(i) < -kPsdTolerance * scale) {
      return absl::InvalidArgumentError(absl::StrCat(
          "core: matrix is not PSD, eigenvalue ", values(i),
          " below tolerance ", -kPsdTolerance * scale));
    }
    values(i) = 0.0;
    clamped = true;
  }
  if (values(d - 1) < kEigenFloor) {
    return absl::InvalidArgumentError(absl::StrCat(
        "core: matrix is numerically zero, largest eigenvalue ", values(d - 1),
        " below floor ", kEigenFloor));
  }
  const Eigen::MatrixXd& vectors = eig.eigenvectors();
  if (clamped) {
    sym = vectors * values.asDiagonal() * vectors.transpose();
    sym = Symmetrize(sym);
  }
  return PsdMatrix(std::move(sym), std::move(values), vectors);
}

absl::StatusOr<PsdMatrix> PsdMatrix::Create(const Eigen::MatrixXd& m) {
  return Build(m, /*project=*/false);
}

absl::StatusOr<PsdMatrix> PsdMatrix::Project(const Eigen::MatrixXd& m) {
  return Build(m, /*project=*/true);
}

PsdMatrix PsdMatrix::Identity(int d) {
  return PsdMatrix(Eigen::MatrixXd::Identity(d, d), Eigen::VectorXd::Ones(d),
                   Eigen::MatrixXd::Identity(d, d));
}

PsdMatrix PsdMatrix::Diagonal(const Eigen::VectorXd& diag) {
  return *Build(diag.asDiagonal().toDenseMatrix(), /*project=*/true);
}

Eigen::MatrixXd PsdMatrix::Sqrt() const {
  const Eigen::VectorXd root = eigenvalues_.cwiseMax(0.0).cwiseSqrt();
  return Symmetrize(eigenvectors_ * root.asDiagonal() *
                    eigenvectors_.transpose());
}

absl::Status PsdMatrix::CheckPositiveDefinite() const {
  if (min_eigenvalue() < kEigenFloor) {
    return absl::InvalidArgumentError(absl::StrCat(
        "core: matrix is singular, eigenvalue ", min_eigenvalue(),
        " below floor ", kEigenFloor));
  }
  return absl::OkStatus();
}

absl::StatusOr<Eigen::MatrixXd> PsdMatrix::InverseSqrt() const {
  absl::Status status = CheckPositiveDefinite();
  if (!status.ok()) return status;
  const Eigen::VectorXd inv_root = eigenvalues_.cwiseSqrt().cwiseInverse();
  return Symmetrize(eigenvectors_ * inv_root.asDiagonal() *
                    eigenvectors_.transpose());
}

absl::StatusOr<Eigen::MatrixXd> PsdMatrix::Inverse() const {
  absl::Status status = CheckPositiveDefinite();
  if (!status.ok()) return status;
  return Symmetrize(eigenvectors_ * eigenvalues_.cwiseInverse().asDiagonal() *
                    eigenvectors_.transpose());
}

}  // namespace dpgauss
