#include "sbpcg/timeint.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <cmath>
#include <limits>

#include "sbpcg/error.hpp"
#include "sbpcg/kernels.hpp"

namespace sbpcg {

Scheme parse_scheme(const std::string& s) {
  if (s == "ssprk22") return Scheme::ssprk22;
  if (s == "ssprk33") return Scheme::ssprk33;
  if (s == "ssprk54") return Scheme::ssprk54;
  throw InvalidArgument("unknown scheme '" + s + "' (ssprk22, ssprk33, ssprk54)");
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::ssprk22: return "ssprk22";
    case Scheme::ssprk33: return "ssprk33";
    case Scheme::ssprk54: return "ssprk54";
  }
  return "?";
}

int scheme_order(Scheme s) { return s == Scheme::ssprk22 ? 2 : s == Scheme::ssprk33 ? 3 : 4; }

MassSolverKind parse_mass_solver(const std::string& s) {
  if (s == "cg") return MassSolverKind::cg;
  if (s == "cholesky") return MassSolverKind::cholesky;
  throw InvalidArgument("unknown mass solver '" + s + "' (cg, cholesky)");
}

std::string to_string(MassSolverKind k) { return k == MassSolverKind::cg ? "cg" : "cholesky"; }

// --------------------------------------------------------------- mass solve

struct MassSolver::Factor {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

MassSolver::MassSolver(const SparseMatrix& M, std::size_t m, MassSolverKind kind, double tol, int max_iterations)
    : M_(&M), m_(m), kind_(kind), tol_(tol), max_iterations_(max_iterations) {
  if (M.rows() != M.cols()) throw InvalidArgument("mass matrix is not square");
  if (!(tol > 0.0) || tol > 1e-6) throw InvalidArgument("mass-solve tolerance must lie in (0, 1e-6]");
  const std::size_t n = M.rows();
  if (kind_ == MassSolverKind::cholesky) {
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(M.nnz());
    for (const auto& e : M.triplets())
      t.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value);
    Eigen::SparseMatrix<double> a(static_cast<int>(n), static_cast<int>(n));
    a.setFromTriplets(t.begin(), t.end());
    factor_ = std::make_unique<Factor>();
    factor_->ldlt.compute(a);
    if (factor_->ldlt.info() != Eigen::Success) throw ConvergenceError("mass matrix factorization failed");
    return;
  }
  const auto d = M.diagonal();
  inv_diag_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(d[i] > 0.0)) throw ConvergenceError("mass matrix has a non-positive diagonal entry");
    inv_diag_[i] = 1.0 / d[i];
  }
  guess_.assign(n * m, 0.0);
}

MassSolver::~MassSolver() = default;
MassSolver::MassSolver(MassSolver&&) noexcept = default;
MassSolver& MassSolver::operator=(MassSolver&&) noexcept = default;

void MassSolver::solve(std::span<const double> r, std::span<double> x) {
  const std::size_t n = M_->rows();
  const std::size_t N = n * m_;
  if (r.size() != N || x.size() != N) throw InvalidArgument("mass solve: size mismatch");
  const double rnorm = std::sqrt(kernels::omp::dot(r, r));
  if (rnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    last_iterations_ = 0;
    return;
  }
  if (kind_ == MassSolverKind::cholesky) {
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMajor> rhs(r.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m_));
    Eigen::Map<RowMajor> sol(x.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m_));
    sol = factor_->ldlt.solve(Eigen::MatrixXd(rhs));
    last_iterations_ = 1;
    return;
  }

  r_.resize(N);
  z_.resize(N);
  p_.resize(N);
  q_.resize(N);
  std::copy(guess_.begin(), guess_.end(), x.begin());
  M_->multiply_block(m_, x, q_);
  for (std::size_t i = 0; i < N; ++i) r_[i] = r[i] - q_[i];
  auto precondition = [&] {
    for (std::size_t i = 0; i < N; ++i) z_[i] = inv_diag_[i / m_] * r_[i];
  };
  precondition();
  p_ = z_;
  double rz = kernels::omp::dot(r_, z_);
  const double target = tol_ * rnorm;
  int it = 0;
  for (; it <= max_iterations_; ++it) {
    if (std::sqrt(kernels::omp::dot(r_, r_)) <= target) break;
    if (it == max_iterations_) throw ConvergenceError("mass solve did not converge (indefinite or ill-conditioned M?)");
    M_->multiply_block(m_, p_, q_);
    const double pq = kernels::omp::dot(p_, q_);
    if (!(pq > 0.0)) throw ConvergenceError("mass solve broke down: M is not positive definite");
    const double a = rz / pq;
    kernels::omp::axpy(a, p_, x);
    kernels::omp::axpy(-a, q_, r_);
    precondition();
    const double rz_new = kernels::omp::dot(r_, z_);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < N; ++i) p_[i] = z_[i] + beta * p_[i];
  }
  last_iterations_ = it;
  std::copy(x.begin(), x.end(), guess_.begin());
}

std::vector<double> mass_solve(const SparseMatrix& M, std::span<const double> r, double tol, int max_iterations) {
  MassSolver s(M, 1, MassSolverKind::cg, tol, max_iterations);
  std::vector<double> x(r.size());
  s.solve(r, x);
  return x;
}

// ---------------------------------------------------------------- SSP steps

namespace {

bool all_finite(std::span<const double> u) {
  for (double v : u)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

void ssp_step(Scheme scheme, const RhsFunction& rhs, double t, double dt, std::vector<double>& u) {
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  const std::size_t n = u.size();
  std::vector<double> k(n), u1(n), u2(n);
  // Convex combinations a0 x0 + a1 x1 (a0 + a1 = 1) are evaluated as
  // x0 + a1 (x1 - x0) so that a stationary state is reproduced exactly.
  auto stage = [&](double, const std::vector<double>& x0, double a1, const std::vector<double>& x1, double b,
                   double ts, std::vector<double>& out) {
    rhs(ts, x1, k);
    for (std::size_t i = 0; i < n; ++i) out[i] = x0[i] + a1 * (x1[i] - x0[i]) + b * dt * k[i];
  };

  switch (scheme) {
    case Scheme::ssprk22:
      stage(0.0, u, 1.0, u, 1.0, t, u1);
      stage(0.5, u, 0.5, u1, 0.5, t + dt, u);
      break;
    case Scheme::ssprk33:
      stage(0.0, u, 1.0, u, 1.0, t, u1);
      stage(0.75, u, 0.25, u1, 0.25, t + dt, u2);
      stage(1.0 / 3.0, u, 2.0 / 3.0, u2, 2.0 / 3.0, t + 0.5 * dt, u);
      break;
    case Scheme::ssprk54: {
      // Five-stage, fourth-order SSP method (Spiteri-Ruuth coefficients).
      // c_i: abscissae of the equivalent Butcher tableau.
      constexpr double c1 = 0.391752226571890, c2 = 0.586079689311540, c3 = 0.474542363121400,
                       c4 = 0.935010630967653;
      std::vector<double> u3(n), u4(n), k3(n);
      stage(0.0, u, 1.0, u, 0.391752226571890, t, u1);
      stage(0.444370493651235, u, 0.555629506348765, u1, 0.368410593050371, t + c1 * dt, u2);
      stage(0.620101851488403, u, 0.379898148511597, u2, 0.251891774271694, t + c2 * dt, u3);
      rhs(t + c3 * dt, u3, k3);
      for (std::size_t i = 0; i < n; ++i)
        u4[i] = u[i] + 0.821920045606868 * (u3[i] - u[i]) + 0.544974750228521 * dt * k3[i];
      rhs(t + c4 * dt, u4, k);
      for (std::size_t i = 0; i < n; ++i)
        u[i] = u2[i] + 0.096059710526147 * (u3[i] - u2[i]) + 0.386708617503269 * (u4[i] - u2[i]) +
               0.063692468666290 * dt * k3[i] + 0.226007483236906 * dt * k[i];
      break;
    }
  }
  if (!all_finite(u)) throw BlowUpError("non-finite value in the solution", -1);
}

// --------------------------------------------------------------- integrator

Integrator::Integrator(const SemiDiscrete& sys, IntegratorConfig config)
    : sys_(sys), cfg_(config), solver_(sys.M, sys.m, config.mass_solver, config.mass_tol, config.max_iterations) {
  if (sys.L.rows() != sys.M.rows() * sys.m) throw InvalidArgument("Integrator: L and M sizes disagree");
  if (!(cfg_.dt > 0.0)) throw InvalidArgument("Integrator: dt must be positive");
  work_.resize(sys.L.rows());
}

void Integrator::rhs(double t, std::span<const double> u, std::span<double> du) {
  sys_.L.multiply(u, work_);
  if (sys_.boundary) sys_.boundary->add_data(t, work_);
  solver_.solve(work_, du);
}

double Integrator::energy(std::span<const double> u) const {
  const std::size_t m = sys_.m;
  std::vector<double> mu(u.size());
  sys_.M.multiply_block(m, u, mu);
  if (sys_.energy_weight.empty()) return kernels::omp::dot(u, mu);
  double s = 0.0;
  for (std::size_t d = 0; d < u.size() / m; ++d)
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t k = 0; k < m; ++k) s += u[d * m + c] * sys_.energy_weight(c, k) * mu[d * m + k];
  return s;
}

Trajectory Integrator::run(std::vector<double> u0, const ExtremaFunction& extrema) {
  if (u0.size() != sys_.L.rows()) throw InvalidArgument("initial state has the wrong size");
  auto ext = [&](std::span<const double> u) -> std::pair<double, double> {
    if (extrema) return extrema(u);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < u.size(); i += sys_.m) {
      lo = std::min(lo, u[i]);
      hi = std::max(hi, u[i]);
    }
    return {hi, lo};
  };
  Trajectory tr;
  tr.state = std::move(u0);
  auto [hi0, lo0] = ext(tr.state);
  tr.max_value = hi0;
  tr.min_value = lo0;
  std::vector<double> du(tr.state.size());
  RhsFunction f = [this](double t, std::span<const double> u, std::span<double> d) { rhs(t, u, d); };

  const double eps = 1e-12 * std::max(1.0, cfg_.t_end);
  auto record = [&](double residual) {
    const auto [hi, lo] = ext(tr.state);
    tr.history.push_back({tr.steps, tr.t, energy(tr.state), hi, lo, residual});
  };
  auto residual_now = [&] {
    rhs(tr.t, tr.state, du);
    return rate_norm(du);
  };
  const bool want_residual = cfg_.steady_tol > 0.0;
  record(want_residual ? residual_now() : 0.0);

  while (tr.t < cfg_.t_end - eps && (cfg_.max_steps <= 0 || tr.steps < cfg_.max_steps)) {
    const double dt = std::min(cfg_.dt, cfg_.t_end - tr.t);
    try {
      ssp_step(cfg_.scheme, f, tr.t, dt, tr.state);
    } catch (const BlowUpError& e) {
      tr.aborted = true;
      tr.last_good_step = tr.steps;
      tr.diagnostic = std::string(e.what()) + " at step " + std::to_string(tr.steps + 1);
      break;
    }
    tr.t += dt;
    ++tr.steps;
    const auto [hi, lo] = ext(tr.state);
    tr.max_value = std::max(tr.max_value, hi);
    tr.min_value = std::min(tr.min_value, lo);
    if (std::max(std::abs(hi), std::abs(lo)) > cfg_.blowup_threshold) {
      tr.aborted = true;
      tr.last_good_step = tr.steps - 1;
      tr.diagnostic = "blow-up: max |u| = " + std::to_string(std::max(std::abs(hi), std::abs(lo))) +
                      " exceeds " + std::to_string(cfg_.blowup_threshold) + " at step " + std::to_string(tr.steps);
      record(0.0);
      break;
    }
    const bool last = tr.t >= cfg_.t_end - eps || (cfg_.max_steps > 0 && tr.steps >= cfg_.max_steps);
    if (want_residual || last || tr.steps % std::max(1L, cfg_.record_every) == 0) {
      const bool check = want_residual && (last || tr.steps % std::max(1L, cfg_.record_every) == 0);
      const double res = check ? residual_now() : 0.0;
      if (!want_residual || check) record(res);
      if (check) {
        tr.final_residual = res;
        if (res < cfg_.steady_tol) {
          tr.steady = true;
          break;
        }
      }
    }
  }
  return tr;
}

}  // namespace sbpcg
