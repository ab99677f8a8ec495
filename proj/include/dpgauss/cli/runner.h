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

#ifndef DPGAUSS_CLI_RUNNER_H_
#define DPGAUSS_CLI_RUNNER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "dpgauss/audit/audit.h"
#include "dpgauss/cli/config.h"
#include "dpgauss/mechanisms/report.h"

namespace dpgauss {

struct SeedResult {
  uint64_t seed = 0;
  std::optional<EstimationReport> estimation;
  std::optional<AuditReport> audit;
  // Errors of the empirical mean / sample covariance on the same data.
  std::optional<double> naive_mean_error;
  std::optional<double> naive_cov_error;
  // Non-empty when the pipeline failed on this seed.
  std::string error;
  double seconds = 0.0;
};

struct RunReport {
  ExperimentConfig config;
  std::vector<SeedResult> results;
  double wall_seconds = 0.0;
};

struct Quantiles {
  double q10 = 0.0;
  double median = 0.0;
  double q90 = 0.0;
  double mean = 0.0;
  int count = 0;
};

// Linear-interpolation quantile of a nonempty sample, p in [0, 1].
double Quantile(std::vector<double> values, double p);

// Per-metric summaries over seeds, in a fixed metric order; metrics with no
// values are omitted.
std::vector<std::pair<std::string, Quantiles>> AggregateMetrics(
    const RunReport& report);

// Validates (InvalidArgument listing every violation), then runs every seed,
// up to `jobs` at a time. Results are in seed order.
absl::StatusOr<RunReport> Run(ExperimentConfig config, int jobs = 1);

// One run per axis value; the axis must be a numeric key.
absl::StatusOr<std::vector<RunReport>> Sweep(const ExperimentConfig& config,
                                             const std::string& axis,
                                             const std::vector<double>& values,
                                             int jobs = 1);

// Deterministic for a fixed config (no timings).
std::string ReportJson(const RunReport& report);
std::string TimingJson(const std::vector<const RunReport*>& reports);
// Columns axis_value, quantile, metric, value.
std::string SeriesCsv(const std::vector<double>& values,
                      const std::vector<RunReport>& reports);

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitHalted = 3;
inline constexpr int kExitAuditViolated = 4;

// 4 when an audit seed is violated, 3 when every seed halted, 1 when every
// seed failed, else 0.
int ExitCodeFor(const RunReport& report);

}  // namespace dpgauss

#endif  // DPGAUSS_CLI_RUNNER_H_
