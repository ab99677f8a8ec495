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

#include "dpgauss/mechanisms/report.h"

#include "dpgauss/core/status_macros.h"

namespace dpgauss {

const char* HaltStageName(HaltStage stage) {
  switch (stage) {
    case HaltStage::kCompleted:
      return "completed";
    case HaltStage::kSelection:
      return "selection";
    case HaltStage::kWitnessCheck:
      return "witness_check";
  }
  return "unknown";
}

std::optional<double> EstimationReport::Diagnostic(
    const std::string& name) const {
  for (const auto& [key, value] : diagnostics) {
    if (key == name) return value;
  }
  return std::nullopt;
}

absl::Status AttachTruth(const GaussianParams& truth, EstimationReport& report) {
  if (report.mean.has_value()) {
    DPGAUSS_ASSIGN_OR_RETURN(
        report.mean_error,
        Mahalanobis(truth.mean - *report.mean, truth.covariance));
  }
  if (report.covariance.has_value()) {
    DPGAUSS_ASSIGN_OR_RETURN(report.cov_error,
                             RelFrobenius(*report.covariance, truth.covariance));
    if (report.covariance->min_eigenvalue() >= kEigenFloor) {
      DPGAUSS_ASSIGN_OR_RETURN(report.tv,
                               TvBounds(truth.covariance, *report.covariance));
    }
  }
  if (report.witness_mean.has_value()) {
    DPGAUSS_ASSIGN_OR_RETURN(
        double err,
        Mahalanobis(truth.mean - *report.witness_mean, truth.covariance));
    report.AddDiagnostic("witness_mean_error", err);
  }
  if (report.witness_covariance.has_value()) {
    DPGAUSS_ASSIGN_OR_RETURN(
        double err, RelFrobenius(*report.witness_covariance, truth.covariance));
    report.AddDiagnostic("witness_cov_error", err);
  }
  return absl::OkStatus();
}

}  // namespace dpgauss
