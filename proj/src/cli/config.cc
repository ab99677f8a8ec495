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

#include "dpgauss/cli/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "dpgauss/approxdp/certificates.h"
#include "dpgauss/approxdp/robust.h"
#include "dpgauss/mechanisms/budget.h"
#include "dpgauss/puredp/estimators.h"
#include "dpgauss/puredp/oracles.h"

namespace dpgauss {
namespace {

constexpr struct {
  Pipeline p;
  const char* name;
} kPipelines[] = {
    {Pipeline::kPureCov, "pure_cov"},
    {Pipeline::kPureMean, "pure_mean"},
    {Pipeline::kPureGaussian, "pure_gaussian"},
    {Pipeline::kApproxMean, "approx_mean"},
    {Pipeline::kApproxCov, "approx_cov"},
    {Pipeline::kGaussSampling, "gauss_sampling"},
    {Pipeline::kAuditGaussSampling, "audit_gauss_sampling"},
    {Pipeline::kAuditSolver, "audit_solver"},
};

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

absl::StatusOr<double> ParseDouble(const std::string& key,
                                   const std::string& text) {
  const std::string t(absl::StripAsciiWhitespace(text));
  double v = 0.0;
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    return absl::InvalidArgumentError(
        absl::StrCat("cli: ", key, " expects a number, got '", text, "'"));
  }
  return v;
}

absl::StatusOr<int> ParseInt(const std::string& key, const std::string& text) {
  auto v = ParseDouble(key, text);
  if (!v.ok()) return v.status();
  if (*v != std::floor(*v) || std::abs(*v) > 2e9) {
    return absl::InvalidArgumentError(
        absl::StrCat("cli: ", key, " expects an integer, got '", text, "'"));
  }
  return static_cast<int>(*v);
}

absl::StatusOr<bool> ParseBool(const std::string& key,
                               const std::string& text) {
  const std::string t = absl::AsciiStrToLower(absl::StripAsciiWhitespace(text));
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  return absl::InvalidArgumentError(
      absl::StrCat("cli: ", key, " expects a boolean, got '", text, "'"));
}

enum class Kind { kDouble, kInt, kBool, kString, kSeeds, kPipeline };

struct Field {
  const char* key;
  Kind kind;
  std::function<void*(ExperimentConfig&)> ref;
};

const std::vector<Field>& Fields() {
  static const auto* fields = new std::vector<Field>{
      {"pipeline", Kind::kPipeline, [](auto& c) -> void* { return &c.pipeline; }},
      {"d", Kind::kInt, [](auto& c) -> void* { return &c.d; }},
      {"n", Kind::kInt, [](auto& c) -> void* { return &c.n; }},
      {"kappa", Kind::kDouble, [](auto& c) -> void* { return &c.kappa; }},
      {"R", Kind::kDouble, [](auto& c) -> void* { return &c.radius; }},
      {"alpha", Kind::kDouble, [](auto& c) -> void* { return &c.alpha; }},
      {"eta", Kind::kDouble, [](auto& c) -> void* { return &c.eta; }},
      {"epsilon", Kind::kDouble, [](auto& c) -> void* { return &c.epsilon; }},
      {"delta", Kind::kDouble, [](auto& c) -> void* { return &c.delta; }},
      {"C", Kind::kDouble, [](auto& c) -> void* { return &c.c; }},
      {"k", Kind::kInt, [](auto& c) -> void* { return &c.k; }},
      {"seeds", Kind::kSeeds, [](auto& c) -> void* { return &c.seeds; }},
      {"oracle", Kind::kString, [](auto& c) -> void* { return &c.oracle; }},
      {"robust", Kind::kBool, [](auto& c) -> void* { return &c.robust; }},
      {"c_L", Kind::kDouble, [](auto& c) -> void* { return &c.c_l; }},
      {"c_delta", Kind::kDouble, [](auto& c) -> void* { return &c.c_delta; }},
      {"c_mu", Kind::kDouble, [](auto& c) -> void* { return &c.c_mu; }},
      {"c_sigma", Kind::kDouble, [](auto& c) -> void* { return &c.c_sigma; }},
      {"rescale", Kind::kDouble, [](auto& c) -> void* { return &c.rescale; }},
      {"beta", Kind::kDouble, [](auto& c) -> void* { return &c.beta; }},
      {"trials", Kind::kInt, [](auto& c) -> void* { return &c.trials; }},
      {"audit_scale", Kind::kDouble,
       [](auto& c) -> void* { return &c.audit_scale; }},
      {"adversary", Kind::kString,
       [](auto& c) -> void* { return &c.adversary; }},
      {"outlier_norm", Kind::kDouble,
       [](auto& c) -> void* { return &c.outlier_norm; }},
      {"data", Kind::kString, [](auto& c) -> void* { return &c.data; }},
  };
  return *fields;
}

const Field* FindField(const std::string& key) {
  for (const Field& f : Fields()) {
    if (key == f.key) return &f;
  }
  return nullptr;
}

}  // namespace

const char* PipelineName(Pipeline p) {
  for (const auto& e : kPipelines) {
    if (e.p == p) return e.name;
  }
  return "unknown";
}

absl::StatusOr<Pipeline> ParsePipeline(const std::string& name) {
  for (const auto& e : kPipelines) {
    if (name == e.name) return e.p;
  }
  std::vector<std::string> names;
  for (const auto& e : kPipelines) names.push_back(e.name);
  return absl::InvalidArgumentError(absl::StrCat(
      "cli: unknown pipeline '", name, "' (one of ", absl::StrJoin(names, ", "),
      ")"));
}

bool IsAudit(Pipeline p) {
  return p == Pipeline::kAuditGaussSampling || p == Pipeline::kAuditSolver;
}

const std::vector<std::string>& ConfigKeys() {
  static const auto* keys = [] {
    auto* k = new std::vector<std::string>;
    for (const Field& f : Fields()) k->push_back(f.key);
    return k;
  }();
  return *keys;
}

bool IsNumericKey(const std::string& key) {
  const Field* f = FindField(key);
  return f != nullptr && (f->kind == Kind::kDouble || f->kind == Kind::kInt);
}

absl::StatusOr<std::vector<uint64_t>> ParseSeedList(const std::string& text) {
  std::vector<uint64_t> seeds;
  for (absl::string_view part :
       absl::StrSplit(text, ',', absl::SkipWhitespace())) {
    const std::string p(absl::StripAsciiWhitespace(part));
    const std::vector<std::string> ends = absl::StrSplit(p, '-');
    auto parse = [&](const std::string& s) -> absl::StatusOr<uint64_t> {
      uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        return absl::InvalidArgumentError(
            absl::StrCat("cli: bad seed '", s, "' in '", text, "'"));
      }
      return v;
    };
    if (ends.size() == 1) {
      auto v = parse(ends[0]);
      if (!v.ok()) return v.status();
      seeds.push_back(*v);
    } else if (ends.size() == 2) {
      auto a = parse(ends[0]);
      auto b = parse(ends[1]);
      if (!a.ok()) return a.status();
      if (!b.ok()) return b.status();
      if (*b < *a || *b - *a > 100000) {
        return absl::InvalidArgumentError(
            absl::StrCat("cli: bad seed range '", p, "'"));
      }
      for (uint64_t s = *a; s <= *b; ++s) seeds.push_back(s);
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("cli: bad seed entry '", p, "'"));
    }
  }
  if (seeds.empty()) {
    return absl::InvalidArgumentError("cli: empty seed list");
  }
  return seeds;
}

absl::Status SetConfigValue(ExperimentConfig& config, const std::string& key,
                            const std::string& value) {
  const Field* f = FindField(key);
  if (f == nullptr) {
    return absl::InvalidArgumentError(
        absl::StrCat("cli: unknown config key '", key, "'"));
  }
  void* slot = f->ref(config);
  switch (f->kind) {
    case Kind::kDouble: {
      auto v = ParseDouble(key, value);
      if (!v.ok()) return v.status();
      *static_cast<double*>(slot) = *v;
      break;
    }
    case Kind::kInt: {
      auto v = ParseInt(key, value);
      if (!v.ok()) return v.status();
      *static_cast<int*>(slot) = *v;
      break;
    }
    case Kind::kBool: {
      auto v = ParseBool(key, value);
      if (!v.ok()) return v.status();
      *static_cast<bool*>(slot) = *v;
      break;
    }
    case Kind::kString:
      *static_cast<std::string*>(slot) =
          std::string(absl::StripAsciiWhitespace(value));
      break;
    case Kind::kSeeds: {
      auto v = ParseSeedList(value);
      if (!v.ok()) return v.status();
      *static_cast<std::vector<uint64_t>*>(slot) = *v;
      break;
    }
    case Kind::kPipeline: {
      auto v = ParsePipeline(std::string(absl::StripAsciiWhitespace(value)));
      if (!v.ok()) return v.status();
      *static_cast<Pipeline*>(slot) = *v;
      break;
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> GetConfigValue(const ExperimentConfig& config,
                                           const std::string& key) {
  const Field* f = FindField(key);
  if (f == nullptr) {
    return absl::InvalidArgumentError(
        absl::StrCat("cli: unknown config key '", key, "'"));
  }
  ExperimentConfig copy = config;
  void* slot = f->ref(copy);
  switch (f->kind) {
    case Kind::kDouble:
      return FormatDouble(*static_cast<double*>(slot));
    case Kind::kInt:
      return absl::StrCat(*static_cast<int*>(slot));
    case Kind::kBool:
      return std::string(*static_cast<bool*>(slot) ? "true" : "false");
    case Kind::kString:
      return *static_cast<std::string*>(slot);
    case Kind::kSeeds:
      return absl::StrJoin(*static_cast<std::vector<uint64_t>*>(slot), ",");
    case Kind::kPipeline:
      return std::string(PipelineName(*static_cast<Pipeline*>(slot)));
  }
  return std::string();
}

absl::Status ApplyConfigText(ExperimentConfig& config,
                             const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string t(absl::StripAsciiWhitespace(line));
    if (t.empty()) continue;
    const size_t eq = t.find('=');
    if (eq == std::string::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("cli: config line ", line_no, " has no '='"));
    }
    const std::string key(absl::StripAsciiWhitespace(t.substr(0, eq)));
    const std::string value(absl::StripAsciiWhitespace(t.substr(eq + 1)));
    absl::Status s = SetConfigValue(config, key, value);
    if (!s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("config line ", line_no, ": ", s.message()));
    }
  }
  return absl::OkStatus();
}

absl::Status ApplyConfigFile(ExperimentConfig& config,
                             const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cli: cannot read ", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return ApplyConfigText(config, ss.str());
}

std::string CanonicalConfig(const ExperimentConfig& config) {
  std::string out;
  for (const std::string& key : ConfigKeys()) {
    absl::StrAppend(&out, key, "=", *GetConfigValue(config, key), "\n");
  }
  return out;
}

std::string ConfigHash(const ExperimentConfig& config) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : CanonicalConfig(config)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double EffectiveC(const ExperimentConfig& config) {
  if (config.c > 0.0) return config.c;
  return config.pipeline == Pipeline::kApproxCov ? kDefaultCovC : kDefaultMeanC;
}

namespace {

ApproxDpConfig ToApproxConfig(const ExperimentConfig& c) {
  ApproxDpConfig a;
  a.c_l = c.c_l;
  a.c_delta = c.c_delta;
  a.c_mu = c.c_mu;
  a.c_sigma = c.c_sigma;
  a.beta = c.beta;
  return a;
}

}  // namespace

int EffectiveK(const ExperimentConfig& config) {
  if (config.k > 0) return config.k;
  if (config.pipeline == Pipeline::kApproxCov) {
    auto budget = PrivacyBudget::Create(config.epsilon, config.delta);
    if (!budget.ok()) return 0;
    auto k = RobustCovarianceMaxK(config.n, *budget, EffectiveC(config),
                                  ToApproxConfig(config));
    return k.ok() ? *k : 0;
  }
  return 100;
}

std::vector<std::string> ValidateConfig(const ExperimentConfig& config) {
  std::vector<std::string> errors;
  auto fail = [&](const char* module, std::string msg) {
    // Library statuses already start with "module: ".
    const std::string own = absl::StrCat(module, ": ");
    if (absl::StartsWith(msg, own)) msg.erase(0, own.size());
    errors.push_back(absl::StrCat("[", module, "] ", msg));
  };
  const Pipeline p = config.pipeline;
  if (config.d < 1) fail("core", absl::StrCat("d = ", config.d, " must be >= 1"));
  if (config.n < 1) fail("core", absl::StrCat("n = ", config.n, " must be >= 1"));
  if (config.seeds.empty()) fail("cli", "seed list is empty");
  if (!(config.eta >= 0.0 && config.eta < 0.5)) {
    fail("core", absl::StrCat("eta = ", config.eta, " must lie in [0, 1/2)"));
  }
  if (!(config.epsilon > 0.0)) {
    fail("mechanisms", absl::StrCat("epsilon = ", config.epsilon,
                                    " must be > 0"));
  }
  if (!(config.kappa >= 1.0)) {
    fail("puredp", absl::StrCat("kappa = ", config.kappa, " must be >= 1"));
  }
  const std::string adv = config.adversary;
  if (adv != "auto" && adv != "none" && adv != "shift" && adv != "norm" &&
      adv != "point") {
    fail("core", absl::StrCat("unknown adversary '", adv,
                              "' (auto, none, shift, norm, point)"));
  }
  if (!(config.outlier_norm >= 0.0)) {
    fail("core", "outlier_norm must be >= 0");
  }
  const bool approx_budget =
      p == Pipeline::kApproxMean || p == Pipeline::kApproxCov ||
      p == Pipeline::kGaussSampling || p == Pipeline::kAuditGaussSampling ||
      p == Pipeline::kAuditSolver;
  if (approx_budget && !(config.delta > 0.0 && config.delta < 1.0)) {
    fail("mechanisms", absl::StrCat("delta = ", config.delta,
                                    " must lie in (0, 1)"));
  }

  switch (p) {
    case Pipeline::kPureCov:
    case Pipeline::kPureMean:
    case Pipeline::kPureGaussian: {
      if (!(config.alpha > 0.0 && config.alpha <= 1.0)) {
        fail("puredp", absl::StrCat("alpha = ", config.alpha,
                                    " must lie in (0, 1]"));
      }
      if (!MakeOracle(config.oracle).ok()) {
        fail("puredp", absl::StrCat("unknown oracle '", config.oracle,
                                    "' (non_private, clip_laplace, injected)"));
      }
      if (!(config.radius > 0.0) && p != Pipeline::kPureCov) {
        fail("puredp", "R must be > 0");
      }
      if (!(config.rescale > 1.0)) {
        fail("puredp", absl::StrCat("rescale = ", config.rescale,
                                    " must be > 1"));
      }
      if (config.kappa >= 1.0 && config.d >= 1) {
        const int rounds = RecursiveRounds(config.kappa);
        // Rows available to recursive preconditioning.
        int rows = config.n;
        if (p == Pipeline::kPureCov) rows = config.n / 2;
        if (p == Pipeline::kPureMean) rows = config.n / 3;
        if (p == Pipeline::kPureGaussian) {
          const int pairs = (config.n - config.n / 2) / 2;
          rows = std::min((config.n / 2) / 3, pairs / 2);
        }
        if (rounds > 0 && rows / rounds < config.d) {
          fail("puredp", absl::StrCat(
                             "kappa = ", config.kappa, " needs ", rounds,
                             " preconditioning partitions of at least d = ",
                             config.d, " rows; only ", rows,
                             " rows are available to preconditioning"));
        }
      }
      break;
    }
    case Pipeline::kApproxMean:
    case Pipeline::kApproxCov:
    case Pipeline::kAuditSolver: {
      if (config.c < 0.0) fail("approxdp", "C must be >= 0 (0 = default)");
      if (config.d > kMaxCertificateDim) {
        fail("approxdp", absl::StrCat("d = ", config.d,
                                      " exceeds the certificate cap ",
                                      kMaxCertificateDim));
      }
      if (!(config.beta > 0.0 && config.beta < 1.0)) {
        fail("approxdp", "beta must lie in (0, 1)");
      }
      auto budget = PrivacyBudget::Create(config.epsilon, config.delta);
      if (!budget.ok() || config.n < 1 || !(config.eta >= 0.0 && config.eta < 0.5)) {
        break;
      }
      const ApproxDpConfig ac = ToApproxConfig(config);
      if (p == Pipeline::kAuditSolver) {
        const int l = SelectionWindow(config.n, config.epsilon, config.delta,
                                      config.beta, config.c_l);
        const int top = static_cast<int>(std::floor(config.eta * config.n + 1e-9));
        if (top < l) {
          fail("approxdp", absl::StrCat("floor(eta n) = ", top, " < L = ", l,
                                        " = ceil((c_L/eps) log(n/(beta delta)))"));
        }
        if (config.trials < 10) {
          fail("audit", absl::StrCat("trials = ", config.trials,
                                     " neighbor pairs; need >= 10"));
        }
        break;
      }
      absl::Status s = CheckRobustPreconditions(config.n, config.eta, *budget, ac);
      if (!s.ok()) fail("approxdp", std::string(s.message()));
      if (p == Pipeline::kApproxCov) {
        auto k_max =
            RobustCovarianceMaxK(config.n, *budget, EffectiveC(config), ac);
        if (k_max.ok()) {
          if (*k_max <= 0) {
            fail("approxdp",
                 absl::StrCat("no admissible sample count k at n = ", config.n,
                              ": k_max = floor((eps/3 / D)^2 / (8 log(3/delta)))"
                              " with D = c_sigma C sqrt(L/n) is 0"));
          } else if (config.k > *k_max) {
            fail("approxdp",
                 absl::StrCat("k = ", config.k, " exceeds the cap k_max = ",
                              *k_max,
                              " = floor((eps/3 / D)^2 / (8 log(3/delta))) with "
                              "D = c_sigma C sqrt(L/n)"));
          }
        }
      }
      break;
    }
    case Pipeline::kGaussSampling:
      if (config.k < 0) fail("mechanisms", "k must be >= 0 (0 = default 100)");
      break;
    case Pipeline::kAuditGaussSampling:
      if (config.k < 0) fail("mechanisms", "k must be >= 0 (0 = default 100)");
      if (config.trials < 1000) {
        fail("audit", absl::StrCat("trials = ", config.trials,
                                   " must be >= 1000"));
      }
      if (!(config.audit_scale >= 0.0)) {
        fail("audit", "audit_scale must be >= 0");
      }
      break;
  }
  return errors;
}

}  // namespace dpgauss
