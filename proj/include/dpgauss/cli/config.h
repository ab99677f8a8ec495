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

#ifndef DPGAUSS_CLI_CONFIG_H_
#define DPGAUSS_CLI_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dpgauss {

inline constexpr char kLibraryVersion[] = "0.1.0";

enum class Pipeline {
  kPureCov,
  kPureMean,
  kPureGaussian,
  kApproxMean,
  kApproxCov,
  kGaussSampling,
  kAuditGaussSampling,
  kAuditSolver,
};

const char* PipelineName(Pipeline p);
absl::StatusOr<Pipeline> ParsePipeline(const std::string& name);
bool IsAudit(Pipeline p);

// Everything that determines a run's output. Zero in C or k selects the
// pipeline default.
struct ExperimentConfig {
  Pipeline pipeline = Pipeline::kPureCov;
  int d = 5;
  int n = 10000;
  double kappa = 100.0;
  double radius = 10.0;
  double alpha = 0.5;
  double eta = 0.0;
  double epsilon = 1.0;
  double delta = 1e-5;
  double c = 0.0;
  int k = 0;
  std::vector<uint64_t> seeds = {1};
  std::string oracle = "clip_laplace";
  bool robust = false;
  double c_l = 4.0;
  double c_delta = 0.02;
  double c_mu = 0.01;
  double c_sigma = 0.002;
  double rescale = 1.09;
  double beta = 0.1;
  // Monte Carlo trials (audit_gauss_sampling) or neighbor pairs
  // (audit_solver).
  int trials = 100000;
  // audit_gauss_sampling: Sigma_2 sits at this multiple of the admissible
  // relative-Frobenius sensitivity.
  double audit_scale = 1.0;
  // auto, none, shift, norm, point.
  std::string adversary = "auto";
  // Outlier distance; 0 picks the pipeline default.
  double outlier_norm = 0.0;
  // Dataset file in the core format; empty means synthetic data.
  std::string data;
};

// Names of every key, in canonical order.
const std::vector<std::string>& ConfigKeys();
bool IsNumericKey(const std::string& key);

// Sets one field from its text form. Numbers use '.' as the decimal separator
// regardless of locale.
absl::Status SetConfigValue(ExperimentConfig& config, const std::string& key,
                            const std::string& value);
absl::StatusOr<std::string> GetConfigValue(const ExperimentConfig& config,
                                           const std::string& key);

// Flat "key = value" lines; '#' starts a comment.
absl::Status ApplyConfigText(ExperimentConfig& config, const std::string& text);
absl::Status ApplyConfigFile(ExperimentConfig& config, const std::string& path);

// "1,2,5-8".
absl::StatusOr<std::vector<uint64_t>> ParseSeedList(const std::string& text);

// key=value per line over ConfigKeys().
std::string CanonicalConfig(const ExperimentConfig& config);
// 64-bit FNV-1a of CanonicalConfig, 16 hex digits.
std::string ConfigHash(const ExperimentConfig& config);

// Every violated precondition of the target pipeline, one "[module] ..."
// entry each. `n` and `d` are those of the data the run will use.
std::vector<std::string> ValidateConfig(const ExperimentConfig& config);

// C and k after defaults.
double EffectiveC(const ExperimentConfig& config);
int EffectiveK(const ExperimentConfig& config);

}  // namespace dpgauss

#endif  // DPGAUSS_CLI_CONFIG_H_
