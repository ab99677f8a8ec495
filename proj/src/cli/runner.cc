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

#include "dpgauss/cli/runner.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "dpgauss/approxdp/robust.h"
#include "dpgauss/core/corruption.h"
#include "dpgauss/core/dataset.h"
#include "dpgauss/core/gaussian.h"
#include "dpgauss/core/metrics.h"
#include "dpgauss/core/status_macros.h"
#include "dpgauss/mechanisms/gaussian_sampling.h"
#include "dpgauss/puredp/estimators.h"
#include "dpgauss/puredp/oracles.h"
#include "json.hpp"

namespace dpgauss {
namespace {

using Json = nlohmann::ordered_json;

bool IsApprox(Pipeline p) {
  return p == Pipeline::kApproxMean || p == Pipeline::kApproxCov;
}

ApproxDpConfig ApproxFrom(const ExperimentConfig& c) {
  ApproxDpConfig a;
  a.c_l = c.c_l;
  a.c_delta = c.c_delta;
  a.c_mu = c.c_mu;
  a.c_sigma = c.c_sigma;
  a.beta = c.beta;
  return a;
}

// Synthetic model per pipeline. The robust approximate-DP pipelines and the
// solver audit use N(0, I); the rest draw a covariance with condition number
// kappa, and the pure-DP mean pipelines a mean of norm R/2.
absl::StatusOr<GaussianParams> MakeTruth(const ExperimentConfig& c,
                                         RngStream& rng) {
  const int d = c.d;
  PsdMatrix cov = PsdMatrix::Identity(d);
  if (!IsApprox(c.pipeline) && c.pipeline != Pipeline::kAuditSolver) {
    DPGAUSS_ASSIGN_OR_RETURN(cov, RandomCovariance(d, c.kappa, rng));
  }
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
  if (c.pipeline == Pipeline::kPureMean ||
      c.pipeline == Pipeline::kPureGaussian) {
    for (int i = 0; i < d; ++i) mean(i) = rng.Normal();
    mean *= 0.5 * c.radius / mean.norm();
  }
  return GaussianParams::Create(std::move(mean), std::move(cov));
}

absl::StatusOr<CorruptionSpec> MakeCorruption(const ExperimentConfig& c) {
  if (!(c.eta > 0.0) || c.adversary == "none") return CorruptionSpec::None();
  // The solver audit picks neighbors itself; its base data stays clean.
  if (c.pipeline == Pipeline::kAuditSolver) return CorruptionSpec::None();
  const int d = c.d;
  std::string adv = c.adversary;
  if (adv == "auto") adv = c.pipeline == Pipeline::kApproxCov ? "norm" : "shift";
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(d);
  e1(0) = 1.0;
  if (adv == "shift") {
    const double r = c.outlier_norm > 0.0 ? c.outlier_norm : 17.0;
    return CorruptionSpec::ShiftCluster(c.eta, r * e1, 1.0);
  }
  if (adv == "norm") {
    const double r = c.outlier_norm > 0.0 ? c.outlier_norm : 100.0;
    return CorruptionSpec::ShiftCluster(c.eta, Eigen::VectorXd::Zero(d),
                                        r / std::sqrt(static_cast<double>(d)));
  }
  if (adv == "point") {
    const double r = c.outlier_norm > 0.0 ? c.outlier_norm : 17.0;
    return CorruptionSpec::ReplaceWithPoint(c.eta, r * e1);
  }
  return absl::InvalidArgumentError(
      absl::StrCat("cli: unknown adversary '", c.adversary, "'"));
}

struct SeedInput {
  std::optional<GaussianParams> truth;
  std::optional<Dataset> data;
};

absl::StatusOr<SeedInput> MakeInput(const ExperimentConfig& c,
                                    const std::optional<Dataset>& file_data,
                                    RngStream& root) {
  SeedInput in;
  if (file_data.has_value()) {
    in.data = *file_data;
    return in;
  }
  RngStream truth_rng = root.Split(11);
  DPGAUSS_ASSIGN_OR_RETURN(GaussianParams truth, MakeTruth(c, truth_rng));
  in.truth = truth;
  if (c.pipeline == Pipeline::kGaussSampling ||
      c.pipeline == Pipeline::kAuditGaussSampling) {
    return in;
  }
  RngStream data_rng = root.Split(10);
  DPGAUSS_ASSIGN_OR_RETURN(Dataset data, SampleGaussian(truth, c.n, data_rng));
  DPGAUSS_ASSIGN_OR_RETURN(CorruptionSpec spec, MakeCorruption(c));
  RngStream corrupt_rng = root.Split(12);
  DPGAUSS_ASSIGN_OR_RETURN(CorruptedDataset cd,
                           Corrupt(data, spec, corrupt_rng));
  in.data = std::move(cd.data);
  return in;
}

absl::Status AttachNaive(const GaussianParams& truth, const Dataset& data,
                         SeedResult& result) {
  DPGAUSS_ASSIGN_OR_RETURN(
      result.naive_mean_error,
      Mahalanobis(data.Mean() - truth.mean, truth.covariance));
  auto emp = EmpiricalCovariance(data, data.Mean());
  if (emp.ok()) {
    auto err = RelFrobenius(*emp, truth.covariance);
    if (err.ok()) result.naive_cov_error = *err;
  }
  return absl::OkStatus();
}

absl::Status RunSeedImpl(const ExperimentConfig& c,
                         const std::optional<Dataset>& file_data,
                         SeedResult& result) {
  RngStream root(result.seed);
  DPGAUSS_ASSIGN_OR_RETURN(SeedInput in, MakeInput(c, file_data, root));
  RngStream rng = root.Split(13);
  const double cc = EffectiveC(c);
  const int k = EffectiveK(c);

  switch (c.pipeline) {
    case Pipeline::kPureCov:
    case Pipeline::kPureMean:
    case Pipeline::kPureGaussian: {
      DPGAUSS_ASSIGN_OR_RETURN(auto oracle, MakeOracle(c.oracle));
      PureDpConfig pc;
      pc.rescale = c.rescale;
      pc.robust = c.robust;
      EstimationReport r;
      if (c.pipeline == Pipeline::kPureCov) {
        DPGAUSS_ASSIGN_OR_RETURN(
            r, EstimateCovariance(*in.data, c.kappa, c.alpha, c.epsilon,
                                  *oracle, rng, pc));
      } else if (c.pipeline == Pipeline::kPureMean) {
        DPGAUSS_ASSIGN_OR_RETURN(
            r, EstimateMean(*in.data, c.kappa, c.radius, c.alpha, c.epsilon,
                            *oracle, rng, pc));
      } else {
        DPGAUSS_ASSIGN_OR_RETURN(
            r, EstimateGaussian(*in.data, c.kappa, c.radius, c.alpha,
                                c.epsilon, *oracle, c.robust, c.eta, rng, pc));
      }
      result.estimation = std::move(r);
      break;
    }
    case Pipeline::kApproxMean:
    case Pipeline::kApproxCov: {
      DPGAUSS_ASSIGN_OR_RETURN(PrivacyBudget budget,
                               PrivacyBudget::Create(c.epsilon, c.delta));
      const ApproxDpConfig ac = ApproxFrom(c);
      EstimationReport r;
      if (c.pipeline == Pipeline::kApproxMean) {
        DPGAUSS_ASSIGN_OR_RETURN(r, RobustMean(*in.data, c.eta, budget, cc,
                                               rng, ac));
      } else {
        DPGAUSS_ASSIGN_OR_RETURN(
            r, RobustCovariance(*in.data, c.eta, budget, cc, k, rng, ac));
      }
      result.estimation = std::move(r);
      break;
    }
    case Pipeline::kGaussSampling: {
      DPGAUSS_ASSIGN_OR_RETURN(PrivacyBudget budget,
                               PrivacyBudget::Create(c.epsilon, c.delta));
      PsdMatrix sigma = PsdMatrix::Identity(c.d);
      if (in.truth.has_value()) {
        sigma = in.truth->covariance;
      } else {
        DPGAUSS_ASSIGN_OR_RETURN(sigma,
                                 EmpiricalCovariance(*in.data, in.data->Mean()));
      }
      EstimationReport r;
      r.pipeline = "gauss_sampling";
      r.ledger = BudgetLedger(budget);
      DPGAUSS_ASSIGN_OR_RETURN(r.covariance,
                               GaussianSamplingMechanism(sigma, k, rng));
      r.ledger.Charge(budget, "gaussian_sampling", absl::StrCat("k = ", k));
      r.AddDiagnostic("k", k);
      r.AddDiagnostic("admissible_sensitivity",
                      GaussianSamplingDelta(c.epsilon, c.delta, k));
      if (!in.truth.has_value()) {
        auto err = RelFrobenius(*r.covariance, sigma);
        if (err.ok()) r.cov_error = *err;
      }
      result.estimation = std::move(r);
      break;
    }
    case Pipeline::kAuditGaussSampling: {
      const PsdMatrix& s1 = in.truth.has_value()
                                ? in.truth->covariance
                                : PsdMatrix::Identity(c.d);
      const double dev =
          c.audit_scale * GaussianSamplingDelta(c.epsilon, c.delta, k);
      DPGAUSS_ASSIGN_OR_RETURN(PsdMatrix s2, CovarianceAtRelFrobenius(s1, dev));
      DPGAUSS_ASSIGN_OR_RETURN(
          AuditReport a,
          AuditGaussianSampling(s1, s2, k, c.epsilon, c.delta, c.trials, rng, 1));
      a.AddDiagnostic("relative_deviation", dev);
      result.audit = std::move(a);
      return absl::OkStatus();
    }
    case Pipeline::kAuditSolver: {
      DPGAUSS_ASSIGN_OR_RETURN(PrivacyBudget budget,
                               PrivacyBudget::Create(c.epsilon, c.delta));
      SolverAuditOptions opt;
      opt.config = ApproxFrom(c);
      opt.program = WitnessProgram::kMean;
      if (c.adversary == "none") {
        opt.replacement = Replacement::kIdentical;
      } else if (c.adversary == "point") {
        opt.replacement = Replacement::kExtreme;
      }
      DPGAUSS_ASSIGN_OR_RETURN(
          AuditReport a,
          AuditSolverSensitivity(*in.data, c.trials, c.eta, cc, budget, rng, opt));
      result.audit = std::move(a);
      return absl::OkStatus();
    }
  }
  if (in.truth.has_value() && result.estimation.has_value()) {
    DPGAUSS_RETURN_IF_ERROR(AttachTruth(*in.truth, *result.estimation));
    if (in.data.has_value()) {
      DPGAUSS_RETURN_IF_ERROR(AttachNaive(*in.truth, *in.data, result));
    }
  }
  return absl::OkStatus();
}

Json Number(double v) {
  if (!std::isfinite(v)) return Json();
  return v;
}

Json MatrixJson(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(Number(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json VectorJson(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(Number(v(i)));
  return out;
}

Json ConfigJson(const ExperimentConfig& c) {
  Json out = Json::object();
  for (const std::string& key : ConfigKeys()) {
    const std::string value = *GetConfigValue(c, key);
    if (key == "seeds") {
      Json seeds = Json::array();
      for (uint64_t s : c.seeds) seeds.push_back(s);
      out[key] = std::move(seeds);
    } else if (key == "robust") {
      out[key] = c.robust;
    } else if (key == "d" || key == "n" || key == "k" || key == "trials") {
      out[key] = std::stoll(value);
    } else if (IsNumericKey(key)) {
      out[key] = Number(std::stod(value));
    } else {
      out[key] = value;
    }
  }
  return out;
}

Json LedgerJson(const BudgetLedger& ledger) {
  Json entries = Json::array();
  for (const LedgerEntry& e : ledger.entries()) {
    Json j = Json::object();
    j["mechanism"] = e.mechanism;
    j["note"] = e.note;
    j["epsilon"] = Number(e.epsilon);
    j["delta"] = Number(e.delta);
    j["epsilon_share"] = e.epsilon_share.ToString();
    j["delta_share"] = e.delta_share.ToString();
    entries.push_back(std::move(j));
  }
  Json out = Json::object();
  out["root_epsilon"] = Number(ledger.root_epsilon());
  out["root_delta"] = Number(ledger.root_delta());
  out["epsilon_spent"] = Number(ledger.epsilon_spent());
  out["delta_spent"] = Number(ledger.delta_spent());
  out["epsilon_share_total"] = ledger.epsilon_share_total().ToString();
  out["delta_share_total"] = ledger.delta_share_total().ToString();
  out["totals_match"] = ledger.TotalsMatchRoot();
  out["entries"] = std::move(entries);
  return out;
}

Json AuditJson(const AuditReport& a) {
  Json out = Json::object();
  out["mechanism"] = a.mechanism;
  out["trials"] = a.trials;
  out["epsilon"] = Number(a.epsilon);
  out["delta"] = Number(a.delta);
  Json obs = Json::object();
  obs["mean_loss"] = Number(a.mean_loss);
  obs["mean_loss_se"] = Number(a.mean_loss_se);
  obs["tail_frequency"] = Number(a.tail_frequency);
  obs["tail_lower_99"] = Number(a.tail_lower_99);
  obs["tail_upper_99"] = Number(a.tail_upper_99);
  out["observed"] = std::move(obs);
  out["verdict"] = AuditVerdictName(a.verdict);
  Json diag = Json::object();
  for (const auto& [k, v] : a.diagnostics) diag[k] = Number(v);
  out["diagnostics"] = std::move(diag);
  out["warnings"] = a.warnings;
  return out;
}

Json SeedJson(const SeedResult& r) {
  Json out = Json::object();
  out["seed"] = r.seed;
  if (!r.error.empty()) {
    out["status"] = "error";
    out["error"] = r.error;
    return out;
  }
  out["status"] = "ok";
  if (r.audit.has_value()) {
    out["audit"] = AuditJson(*r.audit);
    return out;
  }
  const EstimationReport& e = *r.estimation;
  out["pipeline"] = e.pipeline;
  out["halt"] = HaltStageName(e.halt);
  out["completed"] = e.completed();
  if (e.mean_error.has_value()) out["mean_error"] = Number(*e.mean_error);
  if (e.cov_error.has_value()) out["cov_error"] = Number(*e.cov_error);
  if (r.naive_mean_error.has_value()) {
    out["naive_mean_error"] = Number(*r.naive_mean_error);
  }
  if (r.naive_cov_error.has_value()) {
    out["naive_cov_error"] = Number(*r.naive_cov_error);
  }
  if (e.tv.has_value()) {
    Json tv = Json::object();
    tv["lower"] = Number(e.tv->lower);
    tv["upper"] = Number(e.tv->upper);
    tv["m"] = Number(e.tv->m);
    out["tv"] = std::move(tv);
  }
  out["failure_probability"] = Number(e.failure_probability);
  Json est = Json::object();
  if (e.mean.has_value()) est["mean"] = VectorJson(*e.mean);
  if (e.covariance.has_value()) est["covariance"] = MatrixJson(e.covariance->matrix());
  out["estimate"] = std::move(est);
  out["ledger"] = LedgerJson(e.ledger);
  Json diag = Json::object();
  for (const auto& [k, v] : e.diagnostics) diag[k] = Number(v);
  out["diagnostics"] = std::move(diag);
  out["warnings"] = e.warnings;
  return out;
}

std::string Shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

double Quantile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  if (values.empty()) return std::nan("");
  const double pos = p * (values.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(values.size() - 1, lo + 1);
  return values[lo] + (pos - lo) * (values[hi] - values[lo]);
}

std::vector<std::pair<std::string, Quantiles>> AggregateMetrics(
    const RunReport& report) {
  const char* kNames[] = {"mean_error",     "cov_error",      "naive_mean_error",
                          "naive_cov_error", "tv_upper",      "completed",
                          "mean_loss",       "tail_frequency", "max_ratio"};
  std::vector<std::pair<std::string, Quantiles>> out;
  for (const char* name : kNames) {
    const std::string m = name;
    std::vector<double> xs;
    for (const SeedResult& r : report.results) {
      if (!r.error.empty()) continue;
      std::optional<double> v;
      if (r.estimation.has_value()) {
        const EstimationReport& e = *r.estimation;
        if (m == "mean_error") v = e.mean_error;
        if (m == "cov_error") v = e.cov_error;
        if (m == "naive_mean_error" && e.completed()) v = r.naive_mean_error;
        if (m == "naive_cov_error" && e.completed()) v = r.naive_cov_error;
        if (m == "tv_upper" && e.tv.has_value()) v = e.tv->upper;
        if (m == "completed") v = e.completed() ? 1.0 : 0.0;
      }
      if (r.audit.has_value()) {
        if (m == "mean_loss") v = r.audit->mean_loss;
        if (m == "tail_frequency") v = r.audit->tail_frequency;
        if (m == "max_ratio") v = r.audit->Diagnostic("max_ratio");
      }
      if (v.has_value() && std::isfinite(*v)) xs.push_back(*v);
    }
    if (xs.empty()) continue;
    Quantiles q;
    q.count = static_cast<int>(xs.size());
    q.q10 = Quantile(xs, 0.1);
    q.median = Quantile(xs, 0.5);
    q.q90 = Quantile(xs, 0.9);
    double s = 0.0;
    for (double x : xs) s += x;
    q.mean = s / xs.size();
    out.emplace_back(m, q);
  }
  return out;
}

absl::StatusOr<RunReport> Run(ExperimentConfig config, int jobs) {
  std::optional<Dataset> file_data;
  if (!config.data.empty()) {
    auto loaded = LoadDataset(config.data);
    if (!loaded.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("[core] ", loaded.status().message()));
    }
    config.n = loaded->size();
    config.d = loaded->dim();
    file_data = std::move(*loaded);
  }
  const std::vector<std::string> errors = ValidateConfig(config);
  if (!errors.empty()) {
    return absl::InvalidArgumentError(absl::StrJoin(errors, "\n"));
  }
  RunReport report;
  report.config = config;
  report.results.resize(config.seeds.size());
  const auto start = std::chrono::steady_clock::now();
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < report.results.size(); i = next++) {
      SeedResult& r = report.results[i];
      r.seed = config.seeds[i];
      const auto t0 = std::chrono::steady_clock::now();
      absl::Status s = RunSeedImpl(config, file_data, r);
      if (!s.ok()) {
        r.error = s.ToString();
        r.estimation.reset();
        r.audit.reset();
      }
      r.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    }
  };
  const int workers =
      std::clamp<int>(jobs, 1, static_cast<int>(report.results.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

absl::StatusOr<std::vector<RunReport>> Sweep(const ExperimentConfig& config,
                                             const std::string& axis,
                                             const std::vector<double>& values,
                                             int jobs) {
  if (!IsNumericKey(axis)) {
    return absl::InvalidArgumentError(
        absl::StrCat("cli: sweep axis '", axis, "' is not a numeric field"));
  }
  if (values.empty()) {
    return absl::InvalidArgumentError("cli: sweep needs at least one value");
  }
  std::vector<ExperimentConfig> configs;
  std::vector<std::string> errors;
  for (double v : values) {
    ExperimentConfig c = config;
    absl::Status s = SetConfigValue(c, axis, Shortest(v));
    if (!s.ok()) return s;
    for (const std::string& e : ValidateConfig(c)) {
      errors.push_back(absl::StrCat(axis, " = ", Shortest(v), ": ", e));
    }
    configs.push_back(std::move(c));
  }
  if (!errors.empty()) {
    return absl::InvalidArgumentError(absl::StrJoin(errors, "\n"));
  }
  std::vector<RunReport> out;
  for (ExperimentConfig& c : configs) {
    DPGAUSS_ASSIGN_OR_RETURN(RunReport r, Run(std::move(c), jobs));
    out.push_back(std::move(r));
  }
  return out;
}

std::string ReportJson(const RunReport& report) {
  Json out = Json::object();
  out["library"] = "dpgauss";
  out["version"] = kLibraryVersion;
  out["config_hash"] = ConfigHash(report.config);
  out["config"] = ConfigJson(report.config);
  Json results = Json::array();
  int completed = 0, halted = 0, failed = 0, violated = 0;
  for (const SeedResult& r : report.results) {
    results.push_back(SeedJson(r));
    if (!r.error.empty()) {
      ++failed;
    } else if (r.estimation.has_value()) {
      (r.estimation->completed() ? completed : halted)++;
    } else if (r.audit.has_value()) {
      ++completed;
      if (r.audit->verdict == AuditVerdict::kViolated) ++violated;
    }
  }
  out["results"] = std::move(results);
  Json agg = Json::object();
  agg["seeds"] = report.results.size();
  agg["completed"] = completed;
  agg["halted"] = halted;
  agg["failed"] = failed;
  if (IsAudit(report.config.pipeline)) agg["violated"] = violated;
  Json metrics = Json::object();
  for (const auto& [name, q] : AggregateMetrics(report)) {
    Json j = Json::object();
    j["count"] = q.count;
    j["q10"] = Number(q.q10);
    j["median"] = Number(q.median);
    j["q90"] = Number(q.q90);
    j["mean"] = Number(q.mean);
    metrics[name] = std::move(j);
  }
  agg["metrics"] = std::move(metrics);
  out["aggregate"] = std::move(agg);
  return out.dump(2) + "\n";
}

std::string TimingJson(const std::vector<const RunReport*>& reports) {
  Json out = Json::array();
  for (const RunReport* r : reports) {
    Json j = Json::object();
    j["config_hash"] = ConfigHash(r->config);
    j["wall_seconds"] = r->wall_seconds;
    Json seeds = Json::array();
    for (const SeedResult& s : r->results) {
      Json e = Json::object();
      e["seed"] = s.seed;
      e["seconds"] = s.seconds;
      seeds.push_back(std::move(e));
    }
    j["seeds"] = std::move(seeds);
    out.push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

std::string SeriesCsv(const std::vector<double>& values,
                      const std::vector<RunReport>& reports) {
  std::string out = "axis_value,quantile,metric,value\n";
  for (size_t i = 0; i < reports.size() && i < values.size(); ++i) {
    for (const auto& [name, q] : AggregateMetrics(reports[i])) {
      const std::pair<const char*, double> rows[] = {
          {"q10", q.q10}, {"median", q.median}, {"q90", q.q90}, {"mean", q.mean}};
      for (const auto& [qn, v] : rows) {
        absl::StrAppend(&out, Shortest(values[i]), ",", qn, ",", name, ",",
                        Shortest(v), "\n");
      }
    }
  }
  return out;
}

int ExitCodeFor(const RunReport& report) {
  int halted = 0, failed = 0;
  for (const SeedResult& r : report.results) {
    if (!r.error.empty()) {
      ++failed;
      continue;
    }
    if (r.audit.has_value() && r.audit->verdict == AuditVerdict::kViolated) {
      return kExitAuditViolated;
    }
    if (r.estimation.has_value() && !r.estimation->completed()) ++halted;
  }
  const int n = static_cast<int>(report.results.size());
  if (n > 0 && failed == n) return kExitError;
  if (n > 0 && halted + failed == n && halted > 0) return kExitHalted;
  return kExitOk;
}

}  // namespace dpgauss
