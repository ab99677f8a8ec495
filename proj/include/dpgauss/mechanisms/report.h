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

#ifndef DPGAUSS_MECHANISMS_REPORT_H_
#define DPGAUSS_MECHANISMS_REPORT_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/status.h"
#include "dpgauss/core/gaussian.h"
#include "dpgauss/core/metrics.h"
#include "dpgauss/core/psd_matrix.h"
#include "dpgauss/mechanisms/budget.h"

namespace dpgauss {

enum class HaltStage { kCompleted, kSelection, kWitnessCheck };

const char* HaltStageName(HaltStage stage);

// Output of every estimation pipeline: the estimate, its provenance (ledger
// entries in invocation order) and named intermediate quantities.
struct EstimationReport {
  std::string pipeline;
  std::optional<Eigen::VectorXd> mean;
  std::optional<PsdMatrix> covariance;
  std::optional<double> mean_error;
  std::optional<double> cov_error;
  std::optional<TvBracket> tv;
  // Pre-noise witness statistics, when the pipeline has them.
  std::optional<Eigen::VectorXd> witness_mean;
  std::optional<PsdMatrix> witness_covariance;
  HaltStage halt = HaltStage::kCompleted;
  BudgetLedger ledger;
  double failure_probability = 0.0;
  std::vector<std::pair<std::string, double>> diagnostics;
  std::vector<std::string> warnings;

  bool completed() const { return halt == HaltStage::kCompleted; }
  void AddDiagnostic(std::string name, double value) {
    diagnostics.emplace_back(std::move(name), value);
  }
  std::optional<double> Diagnostic(const std::string& name) const;
};

// Fills the parameter errors and TV bracket that the truth makes available.
absl::Status AttachTruth(const GaussianParams& truth, EstimationReport& report);

}  // namespace dpgauss

#endif  // DPGAUSS_MECHANISMS_REPORT_H_
