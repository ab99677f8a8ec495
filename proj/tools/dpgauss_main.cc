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

// Command-line front end: dpgauss run|sweep [flags].

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "dpgauss/cli/config.h"
#include "dpgauss/cli/runner.h"

namespace {

using dpgauss::ExperimentConfig;

bool WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

struct Flags {
  std::string config_path;
  std::string out_dir;
  int jobs = 1;
  bool robust = false;
  std::vector<std::string> sets;
  // key -> raw text, applied after the config file.
  std::map<std::string, std::string> values;
  std::string axis;
  std::string axis_values;
};

void AddCommonFlags(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config_path, "key=value config file");
  app->add_option("--out", f.out_dir, "output directory");
  app->add_option("--jobs", f.jobs, "concurrent seeds")->check(CLI::PositiveNumber);
  app->add_flag("--robust", f.robust, "robust pure-DP variant");
  app->add_option("--set", f.sets, "extra key=value overrides");
  const std::pair<const char*, const char*> keyed[] = {
      {"--pipeline", "pipeline"}, {"--d", "d"},         {"--n", "n"},
      {"--kappa", "kappa"},       {"--R", "R"},         {"--alpha", "alpha"},
      {"--eta", "eta"},           {"--epsilon", "epsilon"},
      {"--delta", "delta"},       {"--C", "C"},         {"--k", "k"},
      {"--oracle", "oracle"},     {"--seed", "seeds"},  {"--data", "data"},
      {"--trials", "trials"},
  };
  for (const auto& [flag, key] : keyed) {
    const std::string k = key;
    app->add_option_function<std::string>(
        flag, [&f, k](const std::string& v) { f.values[k] = v; },
        absl::StrCat("sets '", k, "'"));
  }
}

// Exit code 2 with the messages on a validation failure.
std::optional<ExperimentConfig> BuildConfig(const Flags& f) {
  ExperimentConfig config;
  std::vector<std::string> errors;
  if (!f.config_path.empty()) {
    absl::Status s = dpgauss::ApplyConfigFile(config, f.config_path);
    if (!s.ok()) errors.emplace_back(s.message());
  }
  for (const auto& [key, value] : f.values) {
    absl::Status s = dpgauss::SetConfigValue(config, key, value);
    if (!s.ok()) errors.emplace_back(s.message());
  }
  for (const std::string& kv : f.sets) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      errors.push_back(absl::StrCat("cli: --set expects key=value, got '", kv, "'"));
      continue;
    }
    absl::Status s =
        dpgauss::SetConfigValue(config, kv.substr(0, eq), kv.substr(eq + 1));
    if (!s.ok()) errors.emplace_back(s.message());
  }
  if (f.robust) config.robust = true;
  if (!errors.empty()) {
    for (const auto& e : errors) std::cerr << e << "\n";
    return std::nullopt;
  }
  return config;
}

void PrintSummary(const dpgauss::RunReport& r, std::ostream& os) {
  os << dpgauss::PipelineName(r.config.pipeline) << " seeds=" << r.results.size()
     << " hash=" << dpgauss::ConfigHash(r.config) << "\n";
  for (const auto& [name, q] : dpgauss::AggregateMetrics(r)) {
    os << "  " << name << ": median " << q.median << " (q10 " << q.q10
       << ", q90 " << q.q90 << ", n " << q.count << ")\n";
  }
  for (const auto& s : r.results) {
    if (!s.error.empty()) os << "  seed " << s.seed << ": " << s.error << "\n";
  }
}

int DoRun(const Flags& f) {
  auto config = BuildConfig(f);
  if (!config.has_value()) return dpgauss::kExitValidation;
  auto report = dpgauss::Run(*config, f.jobs);
  if (!report.ok()) {
    std::cerr << report.status().message() << "\n";
    return dpgauss::kExitValidation;
  }
  const std::string json = dpgauss::ReportJson(*report);
  if (f.out_dir.empty()) {
    std::cout << json;
  } else {
    std::filesystem::create_directories(f.out_dir);
    const std::filesystem::path dir(f.out_dir);
    if (!WriteFile(dir / "report.json", json) ||
        !WriteFile(dir / "timing.json", dpgauss::TimingJson({&*report}))) {
      std::cerr << "cannot write to " << f.out_dir << "\n";
      return dpgauss::kExitError;
    }
    PrintSummary(*report, std::cout);
  }
  return dpgauss::ExitCodeFor(*report);
}

int DoSweep(const Flags& f) {
  auto config = BuildConfig(f);
  if (!config.has_value()) return dpgauss::kExitValidation;
  std::vector<double> values;
  for (absl::string_view v :
       absl::StrSplit(f.axis_values, ',', absl::SkipWhitespace())) {
    ExperimentConfig probe;
    // Parse through the config layer so the number rules are shared.
    absl::Status s = dpgauss::SetConfigValue(probe, "kappa", std::string(v));
    if (!s.ok()) {
      std::cerr << "cli: bad sweep value '" << v << "'\n";
      return dpgauss::kExitValidation;
    }
    values.push_back(probe.kappa);
  }
  auto reports = dpgauss::Sweep(*config, f.axis, values, f.jobs);
  if (!reports.ok()) {
    std::cerr << reports.status().message() << "\n";
    return dpgauss::kExitValidation;
  }
  const std::string csv = dpgauss::SeriesCsv(values, *reports);
  std::vector<const dpgauss::RunReport*> ptrs;
  for (const auto& r : *reports) ptrs.push_back(&r);
  if (f.out_dir.empty()) {
    std::cout << csv;
  } else {
    std::filesystem::create_directories(f.out_dir);
    const std::filesystem::path dir(f.out_dir);
    bool ok = WriteFile(dir / absl::StrCat("sweep_", f.axis, ".csv"), csv) &&
              WriteFile(dir / "timing.json", dpgauss::TimingJson(ptrs));
    for (size_t i = 0; i < reports->size(); ++i) {
      ok = ok && WriteFile(dir / absl::StrCat("report_", f.axis, "_", i, ".json"),
                           dpgauss::ReportJson((*reports)[i]));
      PrintSummary((*reports)[i], std::cout);
    }
    if (!ok) {
      std::cerr << "cannot write to " << f.out_dir << "\n";
      return dpgauss::kExitError;
    }
  }
  int code = dpgauss::kExitOk;
  for (const auto& r : *reports) {
    const int c = dpgauss::ExitCodeFor(r);
    if (c == dpgauss::kExitAuditViolated) return c;
    if (c != dpgauss::kExitOk && code == dpgauss::kExitOk) code = c;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dpgauss: private robust Gaussian estimation experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dpgauss::kLibraryVersion));
  Flags run_flags, sweep_flags;
  CLI::App* run = app.add_subcommand("run", "run one configuration");
  AddCommonFlags(run, run_flags);
  CLI::App* sweep = app.add_subcommand("sweep", "run over an axis");
  AddCommonFlags(sweep, sweep_flags);
  sweep->add_option("--axis", sweep_flags.axis, "numeric config key")->required();
  sweep->add_option("--values", sweep_flags.axis_values, "comma-separated")
      ->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dpgauss::kExitValidation;
  }
  if (*run) return DoRun(run_flags);
  return DoSweep(sweep_flags);
}
