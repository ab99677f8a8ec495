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

#include "dpgauss/approxdp/witness.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpgauss/core/status_macros.h"

namespace dpgauss {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxShift = 30.0;
// Feasible iterations without primal movement before the dual is rotated.
constexpr int kStallIterations = 5;
constexpr int kSweeps = 20;
constexpr int kSettledSweeps = 500;
constexpr int kDampAfter = 50;
constexpr double kLooseGapFactor = 100.0;

// One spectral constraint sum_i w_i (f_i f_i^T - rho B I) <= (1 - rho) B I on
// features re-centered at the current weights. The dual variable is
// M = sum_k theta_k v_k v_k^T.
struct Block {
  std::string name;
  bool normalized = false;
  bool fourth_moment = false;
  // Whiten with the pseudo-inverse instead of failing on singular covariance.
  bool pseudo_inverse = false;
  double bound = 0.0;
  Eigen::MatrixXd f;  // n x D
  std::vector<Eigen::VectorXd> planes;
  std::vector<double> theta;
  Eigen::MatrixXd a;  // n x K

  double rho() const { return normalized ? 1.0 : 0.0; }
  int dim() const { return static_cast<int>(f.cols()); }
};

// Primal weight and dual term h(c) = max_w w(1 - log w) - c w on [0, 1/n].
inline double WeightOf(double c, double log_n, double cap) {
  return c >= log_n ? std::exp(-c) : cap;
}
inline double HOf(double c, double log_n, double cap) {
  return c >= log_n ? std::exp(-c) : cap * (1.0 + log_n - c);
}

absl::Status ComputeFeatures(const Eigen::MatrixXd& y, const Eigen::VectorXd& w,
                             Block& block) {
  const int d = static_cast<int>(y.rows());
  const int n = static_cast<int>(y.cols());
  const double mass = w.sum();
  if (!(mass > 0.0)) {
    return absl::InternalError("approxdp: witness weights lost all mass");
  }
  const Eigen::VectorXd p = w / mass;
  const Eigen::VectorXd mu = y * p;
  Eigen::MatrixXd x = y.colwise() - mu;
  if (!block.fourth_moment) {
    block.f = x.transpose();
    return absl::OkStatus();
  }
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
  {
    Eigen::MatrixXd g = x * p.cwiseSqrt().asDiagonal();
    s.selfadjointView<Eigen::Lower>().rankUpdate(g);
    s = s.selfadjointView<Eigen::Lower>();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
  const Eigen::VectorXd& lam = eig.eigenvalues();
  const bool singular =
      !(lam(d - 1) > kEigenFloor) || lam(0) <= 1e-12 * lam(d - 1);
  if (singular && !block.pseudo_inverse) {
    return absl::FailedPreconditionError(absl::StrCat(
        "approxdp: weighted covariance is singular (eigenvalues ", lam(0), ", ",
        lam(d - 1), "); cannot whiten"));
  }
  // Pseudo-inverse square root on the support.
  Eigen::VectorXd inv_sqrt = Eigen::VectorXd::Zero(d);
  for (int j = 0; j < d; ++j) {
    if (lam(j) > 1e-10 * lam(d - 1) && lam(j) > 0.0) {
      inv_sqrt(j) = 1.0 / std::sqrt(lam(j));
    }
  }
  const Eigen::MatrixXd whiten = eig.eigenvectors() * inv_sqrt.asDiagonal() *
                                 eig.eigenvectors().transpose();
  const Eigen::MatrixXd z = (whiten * x).transpose();
  const int dd = d * (d + 1) / 2;
  block.f.resize(n, dd);
  int col = 0;
  const double r2 = std::sqrt(2.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j; k < d; ++k, ++col) {
      const double scale = (j == k) ? 1.0 : r2;
      block.f.col(col) = scale * z.col(j).cwiseProduct(z.col(k));
      block.f.col(col).array() -= block.f.col(col).dot(p);
    }
  }
  return absl::OkStatus();
}

void RecomputeA(Block& block) {
  const int k = static_cast<int>(block.planes.size());
  const int n = static_cast<int>(block.f.rows());
  if (k == 0) {
    block.a.resize(n, 0);
    return;
  }
  Eigen::MatrixXd p(block.dim(), k);
  for (int i = 0; i < k; ++i) p.col(i) = block.planes[i];
  block.a = (block.f * p).array().square().matrix();
}

// Top eigenpairs of the constraint matrix, in constraint units: Cov-like
// matrix minus bound * I.
struct Violation {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // columns
};

Violation ComputeViolation(const Block& block, const Eigen::VectorXd& w) {
  const int dim = block.dim();
  const double scale = block.normalized ? 1.0 / w.sum() : 1.0;
  const Eigen::MatrixXd g = (w * scale).cwiseSqrt().asDiagonal() * block.f;
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(dim, dim);
  v.selfadjointView<Eigen::Lower>().rankUpdate(g.transpose());
  v = v.selfadjointView<Eigen::Lower>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(v);
  Violation out;
  out.values = (eig.eigenvalues().reverse().array() - block.bound).matrix();
  out.vectors = eig.eigenvectors().rowwise().reverse();
  return out;
}

void Compress(Block& block) {
  const int dim = block.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (size_t k = 0; k < block.planes.size(); ++k) {
    m += block.theta[k] * block.planes[k] * block.planes[k].transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const double top = eig.eigenvalues().cwiseAbs().maxCoeff();
  block.planes.clear();
  block.theta.clear();
  for (int i = 0; i < dim; ++i) {
    const double lam = eig.eigenvalues()(i);
    if (lam > 1e-14 * top && lam > 0.0) {
      block.planes.push_back(eig.eigenvectors().col(i));
      block.theta.push_back(lam);
    }
  }
}

// Re-expresses the dual matrix in the eigenbasis of the constraint matrix
// (top `keep` directions). Coordinate descent on nearly collinear planes can
// stall on the piecewise-linear part of the dual; in this basis the optimal
// dual matrix is diagonal.
void Rotate(Block& block, const Violation& v, int keep) {
  const int dim = block.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (size_t k = 0; k < block.planes.size(); ++k) {
    m += block.theta[k] * block.planes[k] * block.planes[k].transpose();
  }
  block.planes.clear();
  block.theta.clear();
  for (int j = 0; j < std::min(keep, dim); ++j) {
    const Eigen::VectorXd u = v.vectors.col(j);
    block.planes.push_back(u);
    block.theta.push_back(std::max(0.0, u.dot(m * u)));
  }
}

}  // namespace

Eigen::VectorXd Svec(const Eigen::MatrixXd& m) {
  const int d = static_cast<int>(m.rows());
  Eigen::VectorXd v(d * (d + 1) / 2);
  int row = 0;
  for (int j = 0; j < d; ++j) {
    for (int k = j; k < d; ++k, ++row) {
      v(row) = (j == k) ? m(j, j) : std::sqrt(2.0) * 0.5 * (m(j, k) + m(k, j));
    }
  }
  return v;
}

Eigen::MatrixXd Unsvec(const Eigen::VectorXd& v, int d) {
  Eigen::MatrixXd m(d, d);
  int row = 0;
  for (int j = 0; j < d; ++j) {
    for (int k = j; k < d; ++k, ++row) {
      const double x = (j == k) ? v(row) : v(row) / std::sqrt(2.0);
      m(j, k) = x;
      m(k, j) = x;
    }
  }
  return m;
}

struct WitnessSolver::State {
  Dataset data;
  WitnessProgram program;
  double c = 0.0;
  WitnessOptions options;
  int n = 0;
  double log_n = 0.0;
  double cap = 0.0;

  std::vector<Block> blocks;
  Eigen::VectorXd w;
  Eigen::VectorXd cvec;
  double nu = 0.0;
  std::optional<bool> uniform_feasible;

  // Dual state after the last feasible solve.
  struct Snapshot {
    std::vector<std::vector<Eigen::VectorXd>> planes;
    std::vector<std::vector<double>> theta;
    Eigen::VectorXd w;
    double nu = 0.0;
  };
  std::optional<Snapshot> snapshot;
  bool dirty = false;

  explicit State(Dataset d) : data(std::move(d)) {}

  void RecomputeC() {
    cvec = Eigen::VectorXd::Constant(n, -nu);
    for (const Block& b : blocks) {
      for (size_t k = 0; k < b.planes.size(); ++k) {
        cvec.array() += b.theta[k] * (b.a.col(k).array() - b.rho() * b.bound);
      }
    }
  }

  Eigen::VectorXd PrimalWeights() const {
    Eigen::VectorXd out(n);
    for (int i = 0; i < n; ++i) out(i) = WeightOf(cvec(i), log_n, cap);
    return out;
  }

  double DualValue(double eta) const {
    double value = 0.0;
    for (int i = 0; i < n; ++i) value += HOf(cvec(i), log_n, cap);
    for (const Block& b : blocks) {
      double tr = 0.0;
      for (double t : b.theta) tr += t;
      value += (1.0 - b.rho()) * b.bound * tr;
    }
    return value - nu * (1.0 - eta);
  }

  // Minimizes the dual along one coordinate x in [0, x_max] whose coefficient
  // in c_i is g_i and whose linear coefficient in the dual is k0. Updates c.
  double LineSolve(const Eigen::VectorXd& g, double k0, double x0,
                   double x_max) {
    auto eval = [&](double t, double* dphi) {
      double phi = k0;
      double d2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const double ci = cvec(i) + t * g(i);
        if (ci >= log_n) {
          const double wi = std::exp(-ci);
          phi -= wi * g(i);
          d2 += wi * g(i) * g(i);
        } else {
          phi -= cap * g(i);
        }
      }
      *dphi = d2;
      return phi;
    };
    // Scale by the weighted terms actually present, so that points already
    // pushed far below the cap do not swamp the tolerance.
    double scale = std::abs(k0) + 1e-300;
    for (int i = 0; i < n; ++i) {
      scale += WeightOf(cvec(i), log_n, cap) * std::abs(g(i));
    }
    const double ftol = 1e-14 * scale;
    double d2 = 0.0;
    const double t_min = -x0;
    double lo = t_min;
    double phi_lo = eval(t_min, &d2);
    if (phi_lo >= 0.0) {
      cvec += t_min * g;
      return 0.0;
    }
    const double t_max = x_max - x0;
    if (t_max <= 0.0 || eval(t_max, &d2) <= 0.0) {
      const double t = std::max(t_max, t_min);
      cvec += t * g;
      return x0 + t;
    }
    double hi = t_max;
    double t = 0.0;
    double phi = (x0 == 0.0) ? phi_lo : eval(0.0, &d2);
    double step = 1.0 / std::max(g.cwiseAbs().maxCoeff(), 1e-300);
    for (int iter = 0; iter < 200; ++iter) {
      if (phi < 0.0) {
        lo = std::max(lo, t);
      } else {
        hi = std::min(hi, t);
      }
      if (std::abs(phi) <= ftol) break;
      if (std::isfinite(hi) && hi - lo <= 1e-15 * std::max(1.0, std::abs(t + x0))) {
        break;
      }
      double next = (d2 > 0.0) ? t - phi / d2 : kInf;
      if (!(next > lo && next < hi)) {
        if (std::isfinite(hi)) {
          next = 0.5 * (lo + hi);
        } else {
          next = std::max(t, lo) + step;
          step *= 2.0;
        }
      }
      t = next;
      phi = eval(t, &d2);
    }
    cvec += t * g;
    return x0 + t;
  }

  // Coordinate descent on the dual for fixed features and planes.
  void InnerSolve(double eta, int max_sweeps) {
    const Eigen::VectorXd minus_one = Eigen::VectorXd::Constant(n, -1.0);
    double prev = DualValue(eta);
    // Trust region: a dual coordinate may move c by about kMaxShift for a
    // typical point per inner solve, since the features are only valid near
    // the current weights. The cap acts as an exact penalty when the
    // linearized constraint is infeasible.
    const double nu_max = nu + kMaxShift;
    const Eigen::VectorXd p0 = PrimalWeights() / PrimalWeights().sum();
    std::vector<std::vector<double>> theta_max;
    for (const Block& b : blocks) {
      std::vector<double> caps;
      for (size_t k = 0; k < b.planes.size(); ++k) {
        const double typical =
            (b.a.col(k).array() - b.rho() * b.bound).abs().matrix().dot(p0);
        caps.push_back(b.theta[k] + kMaxShift / std::max(typical, 1e-300));
      }
      theta_max.push_back(std::move(caps));
    }
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      nu = LineSolve(minus_one, -(1.0 - eta), nu, nu_max);
      for (size_t bi = 0; bi < blocks.size(); ++bi) {
        Block& b = blocks[bi];
        for (size_t k = 0; k < b.planes.size(); ++k) {
          const Eigen::VectorXd g = b.a.col(k).array() - b.rho() * b.bound;
          b.theta[k] = LineSolve(g, (1.0 - b.rho()) * b.bound, b.theta[k],
                                 theta_max[bi][k]);
        }
      }
      nu = LineSolve(minus_one, -(1.0 - eta), nu, nu_max);
      const double value = DualValue(eta);
      if (prev - value <= 1e-14 * (1.0 + std::abs(value))) break;
      prev = value;
    }
  }

  absl::Status SetFeatures(const Eigen::VectorXd& weights) {
    for (Block& b : blocks) {
      DPGAUSS_RETURN_IF_ERROR(ComputeFeatures(data.points(), weights, b));
      RecomputeA(b);
    }
    return absl::OkStatus();
  }

  void TakeSnapshot() {
    Snapshot s;
    for (const Block& b : blocks) {
      s.planes.push_back(b.planes);
      s.theta.push_back(b.theta);
    }
    s.w = w;
    s.nu = nu;
    snapshot = std::move(s);
    dirty = false;
  }

  void Restore() {
    if (snapshot.has_value()) {
      for (size_t i = 0; i < blocks.size(); ++i) {
        blocks[i].planes = snapshot->planes[i];
        blocks[i].theta = snapshot->theta[i];
      }
      w = snapshot->w;
      nu = snapshot->nu;
    } else {
      for (Block& b : blocks) {
        b.planes.clear();
        b.theta.clear();
      }
      w = Eigen::VectorXd::Constant(n, cap);
      nu = 0.0;
    }
    dirty = false;
  }

  absl::StatusOr<WitnessSolution> Finish(const Eigen::VectorXd& weights,
                                         bool feasible, double eta,
                                         WitnessCertificate cert) {
    WitnessSolution sol;
    DPGAUSS_ASSIGN_OR_RETURN(sol.weights, WeightVector::Create(weights));
    sol.feasible = feasible;
    const Eigen::VectorXd p = weights / weights.sum();
    const Eigen::MatrixXd& y = data.points();
    sol.mean = y * p;
    Eigen::MatrixXd g = y * p.cwiseSqrt().asDiagonal();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(y.rows(), y.rows());
    m.selfadjointView<Eigen::Lower>().rankUpdate(g);
    m = m.selfadjointView<Eigen::Lower>();
    absl::StatusOr<PsdMatrix> second = PsdMatrix::Project(m);
    if (second.ok()) sol.second_moment = *std::move(second);
    DPGAUSS_ASSIGN_OR_RETURN(const double pot, Potential(sol.weights));
    sol.potential = feasible ? pot : kInf;
    cert.mass_slack = weights.sum() - (1.0 - eta);
    sol.certificate = std::move(cert);
    return sol;
  }
};

WitnessSolver::WitnessSolver(std::unique_ptr<State> state)
    : state_(std::move(state)) {}
WitnessSolver::~WitnessSolver() = default;

int WitnessSolver::n() const { return state_->n; }
const Dataset& WitnessSolver::data() const { return state_->data; }
WitnessProgram WitnessSolver::program() const { return state_->program; }
double WitnessSolver::c() const { return state_->c; }

absl::StatusOr<std::unique_ptr<WitnessSolver>> WitnessSolver::Create(
    const Dataset& data, WitnessProgram program, double c,
    const WitnessOptions& options) {
  if (data.size() < 2) {
    return absl::InvalidArgumentError("approxdp: witness solver needs n >= 2");
  }
  if (!(c > 1.0) || !std::isfinite(c)) {
    return absl::InvalidArgumentError(
        absl::StrCat("approxdp: witness constant C must exceed 1 (got ", c, ")"));
  }
  auto state = std::make_unique<State>(data);
  state->program = program;
  state->c = c;
  state->options = options;
  state->n = data.size();
  state->log_n = std::log(static_cast<double>(state->n));
  state->cap = 1.0 / state->n;
  if (state->options.max_iterations <= 0) {
    state->options.max_iterations =
        static_cast<int>(std::ceil(500.0 * state->log_n));
  }
  if (program == WitnessProgram::kMean) {
    Block spectral;
    spectral.name = "spectral";
    spectral.bound = c;
    state->blocks.push_back(std::move(spectral));
    if (options.subgaussian_certificate) {
      Block cert;
      cert.name = "subgaussian";
      cert.normalized = true;
      cert.fourth_moment = true;
      cert.pseudo_inverse = true;
      // (2 C')^2 - 1 at C' = C/2.
      cert.bound = c * c - 1.0;
      state->blocks.push_back(std::move(cert));
    }
  } else {
    Block hyper;
    hyper.name = "hypercontractivity";
    hyper.normalized = true;
    hyper.fourth_moment = true;
    hyper.bound = c;
    state->blocks.push_back(std::move(hyper));
  }
  state->w = Eigen::VectorXd::Constant(state->n, state->cap);
  return std::unique_ptr<WitnessSolver>(new WitnessSolver(std::move(state)));
}

absl::StatusOr<bool> WitnessSolver::UniformFeasible() {
  State& s = *state_;
  if (s.uniform_feasible.has_value()) return *s.uniform_feasible;
  const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(s.n, s.cap);
  bool ok = true;
  for (const Block& proto : s.blocks) {
    Block b;
    b.normalized = proto.normalized;
    b.fourth_moment = proto.fourth_moment;
    b.pseudo_inverse = proto.pseudo_inverse;
    b.bound = proto.bound;
    DPGAUSS_RETURN_IF_ERROR(ComputeFeatures(s.data.points(), uniform, b));
    const Violation v = ComputeViolation(b, uniform);
    if (v.values(0) > s.options.violation_tol * b.bound) ok = false;
  }
  s.uniform_feasible = ok;
  return ok;
}

absl::StatusOr<WitnessSolution> WitnessSolver::Solve(double eta) {
  State& s = *state_;
  if (!(eta >= 0.0 && eta <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("approxdp: outlier rate must lie in [0, 1] (got ", eta, ")"));
  }
  DPGAUSS_ASSIGN_OR_RETURN(const bool uniform_ok, UniformFeasible());
  if (uniform_ok) {
    WitnessCertificate cert;
    cert.dual_bound = s.log_n + 1.0;
    for (const Block& b : s.blocks) cert.block_slacks.emplace_back(b.name, 0.0);
    return s.Finish(Eigen::VectorXd::Constant(s.n, s.cap), true, eta, cert);
  }
  if (s.dirty) s.Restore();

  const double floor = (1.0 - eta) * (1.0 + s.log_n);
  const double floor_margin = 1e-9 * floor;
  int below_floor = 0;
  int stalled = 0;
  int certified_streak = 0;
  bool exact_inner = false;
  bool ever_feasible = false;
  Eigen::VectorXd best_w;
  double best_ent = -kInf;
  WitnessCertificate best_cert;
  WitnessCertificate cert;
  DPGAUSS_RETURN_IF_ERROR(s.SetFeatures(s.w));
  s.RecomputeC();

  for (int iter = 1; iter <= s.options.max_iterations; ++iter) {
    // Coordinate descent is slow on the flat part of the dual; solve the
    // inner problem more exactly once a stall has been seen.
    s.InnerSolve(eta, exact_inner ? kSettledSweeps : kSweeps);
    const double dual = s.DualValue(eta);
    const Eigen::VectorXd w = s.PrimalWeights();
    if (!(w.sum() > 0.0)) {
      s.dirty = true;
      WitnessCertificate c2;
      c2.dual_bound = dual;
      c2.iterations = iter;
      return s.Finish(Eigen::VectorXd::Constant(s.n, s.cap), false, eta, c2);
    }

    // Constraint check on features re-centered at the new weights.
    const double move = (w - s.w).cwiseAbs().sum();
    const Eigen::VectorXd old_center = s.w;
    s.w = w;
    DPGAUSS_RETURN_IF_ERROR(s.SetFeatures(w));
    double worst = 0.0;
    cert.block_slacks.clear();
    std::vector<Violation> violations;
    for (Block& b : s.blocks) {
      if (static_cast<int>(b.planes.size()) >
          std::min(s.options.compress_at, b.dim())) {
        Compress(b);
      }
      violations.push_back(ComputeViolation(b, w));
      const Violation& v = violations.back();
      cert.block_slacks.emplace_back(b.name, v.values(0));
      worst = std::max(worst, v.values(0) / b.bound);
      int added = 0;
      for (int j = 0; j < v.values.size() && added < s.options.planes_per_iteration; ++j) {
        if (v.values(j) <= s.options.violation_tol * b.bound) break;
        b.planes.push_back(v.vectors.col(j));
        b.theta.push_back(0.0);
        ++added;
      }
      RecomputeA(b);
    }
    // Re-centering can cycle when the whitening depends strongly on w (small
    // n); past a point, move the linearization center only part way.
    const double damping = iter > 4 * kDampAfter ? 0.25
                           : iter > kDampAfter   ? 0.5
                                                 : 1.0;
    if (damping < 1.0) {
      s.w = (1.0 - damping) * old_center + damping * w;
      DPGAUSS_RETURN_IF_ERROR(s.SetFeatures(s.w));
    }
    s.RecomputeC();

    DPGAUSS_ASSIGN_OR_RETURN(const double ent, UnnormalizedEntropy(w));
    const double mass_slack = w.sum() - (1.0 - eta);
    const bool mass_ok = mass_slack >= -1e-9;
    const bool constraints_ok = worst <= s.options.violation_tol;
    cert.max_violation = worst;
    cert.dual_bound = dual;
    cert.duality_gap = (dual - ent) / s.log_n;
    cert.iterations = iter;
    const bool certified =
        mass_ok && constraints_ok && cert.duality_gap <= s.options.tol;
    certified_streak = certified ? certified_streak + 1 : 0;
    if (mass_ok && constraints_ok) {
      ever_feasible = true;
      if (ent > best_ent) {
        best_ent = ent;
        best_w = w;
        best_cert = cert;
      }
      // A feasible, certified iterate that keeps moving is a short cycle of
      // the re-centering; accept it after a few rounds.
      if (certified &&
          (move <= 1e-5 || certified_streak >= kStallIterations)) {
        s.TakeSnapshot();
        return s.Finish(w, true, eta, cert);
      }
      if (move > 1e-5) stalled = 0;
      if (move <= 1e-5 && ++stalled >= kStallIterations) {
        stalled = 0;
        exact_inner = true;
        for (size_t bi = 0; bi < s.blocks.size(); ++bi) {
          Rotate(s.blocks[bi], violations[bi], s.options.compress_at);
          RecomputeA(s.blocks[bi]);
        }
        s.RecomputeC();
      }
    }
    if (dual < floor - floor_margin) {
      if (++below_floor >= s.options.infeasible_streak) {
        s.dirty = true;
        return s.Finish(w, false, eta, cert);
      }
    } else {
      below_floor = 0;
    }
  }
  s.dirty = true;
  if (!ever_feasible) {
    return s.Finish(s.w, false, eta, cert);
  }
  // Budget spent while cycling near the optimum: keep the best feasible
  // iterate if its gap is within the loose tolerance.
  if (best_cert.duality_gap <= kLooseGapFactor * s.options.tol) {
    s.TakeSnapshot();
    return s.Finish(best_w, true, eta, best_cert);
  }
  return absl::DeadlineExceededError(absl::StrCat(
      "approxdp: witness solver did not converge in ", s.options.max_iterations,
      " iterations (gap ", cert.duality_gap, ", violation ", cert.max_violation,
      ")"));
}

absl::StatusOr<WitnessSolution> SolveMeanWitness(const Dataset& data,
                                                 double eta, double c,
                                                 const WitnessOptions& options) {
  DPGAUSS_ASSIGN_OR_RETURN(
      auto solver, WitnessSolver::Create(data, WitnessProgram::kMean, c, options));
  return solver->Solve(eta);
}

absl::StatusOr<WitnessSolution> SolveCovWitness(const Dataset& data, double eta,
                                                double c,
                                                const WitnessOptions& options) {
  DPGAUSS_ASSIGN_OR_RETURN(
      auto solver,
      WitnessSolver::Create(data, WitnessProgram::kCovariance, c, options));
  return solver->Solve(eta);
}

}  // namespace dpgauss
