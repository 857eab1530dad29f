#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sbpcg/dense.hpp"
#include "sbpcg/sat.hpp"
#include "sbpcg/sparse.hpp"

namespace sbpcg {

enum class Scheme { ssprk22, ssprk33, ssprk54 };
Scheme parse_scheme(const std::string& s);
std::string to_string(Scheme s);
int scheme_order(Scheme s);

enum class MassSolverKind { cg, cholesky };
MassSolverKind parse_mass_solver(const std::string& s);
std::string to_string(MassSolverKind k);

/// Solves (M kron I_m) x = r. `cg` is conjugate gradients with diagonal
/// scaling, warm-started from the previous solution; `cholesky` factors M
/// once (sparse LDL^T).
class MassSolver {
 public:
  MassSolver(const SparseMatrix& M, std::size_t m = 1, MassSolverKind kind = MassSolverKind::cg, double tol = 1e-12,
             int max_iterations = 2000);
  ~MassSolver();
  MassSolver(MassSolver&&) noexcept;
  MassSolver& operator=(MassSolver&&) noexcept;

  /// Relative residual ||Mx - r|| / ||r|| <= tol, else ConvergenceError.
  void solve(std::span<const double> r, std::span<double> x);
  int last_iterations() const { return last_iterations_; }

 private:
  struct Factor;
  const SparseMatrix* M_;
  std::size_t m_;
  MassSolverKind kind_;
  double tol_;
  int max_iterations_;
  int last_iterations_ = 0;
  std::vector<double> inv_diag_, guess_, r_, z_, p_, q_;
  std::unique_ptr<Factor> factor_;
};

/// One-shot CG solve from a zero initial guess.
std::vector<double> mass_solve(const SparseMatrix& M, std::span<const double> r, double tol = 1e-12,
                               int max_iterations = 2000);

/// du = L(t, u)
using RhsFunction = std::function<void(double t, std::span<const double> u, std::span<double> du)>;

/// One step in Shu-Osher form. Throws BlowUpError (last_good_step = -1) if
/// the new state contains NaN/Inf.
void ssp_step(Scheme scheme, const RhsFunction& rhs, double t, double dt, std::vector<double>& u);

/// M du/dt = L u + G(t), with L = Pi - Q (+ M kron S for relaxation terms).
struct SemiDiscrete {
  SparseMatrix L;
  SparseMatrix M;  // scalar mass
  std::size_t m = 1;
  const BoundaryOperator* boundary = nullptr;
  DenseMatrix energy_weight;  // m x m; empty means identity
};

struct IntegratorConfig {
  Scheme scheme = Scheme::ssprk54;
  double dt = 0.0;
  double t_end = 0.0;
  long max_steps = -1;  // if > 0, stop after this many steps even before t_end
  double mass_tol = 1e-12;
  int max_iterations = 2000;
  MassSolverKind mass_solver = MassSolverKind::cg;
  double blowup_threshold = 10.0;  // abort when max |u| exceeds this
  double steady_tol = 0.0;         // > 0: stop once ||du/dt||_M falls below
  long record_every = 1;
};

struct Sample {
  long step;
  double t;
  double energy;  // u^T (M kron W) u
  double umax;
  double umin;
  double residual;  // ||du/dt||_M at the start of the step
};

struct Trajectory {
  std::vector<double> state;
  double t = 0.0;
  long steps = 0;
  std::vector<Sample> history;
  double max_value = 0.0;  // over the whole run
  double min_value = 0.0;
  bool aborted = false;
  std::string diagnostic;
  long last_good_step = -1;
  bool steady = false;
  double final_residual = 0.0;
};

/// Extrema of a state for monitoring (e.g. nodal values of component 0).
using ExtremaFunction = std::function<std::pair<double, double>(std::span<const double> u)>;

class Integrator {
 public:
  Integrator(const SemiDiscrete& sys, IntegratorConfig config);

  void rhs(double t, std::span<const double> u, std::span<double> du);
  double energy(std::span<const double> u) const;
  double rate_norm(std::span<const double> du) const { return std::sqrt(std::max(energy(du), 0.0)); }

  /// Runs from t = 0. Blow-up is reported through the trajectory, not
  /// thrown.
  Trajectory run(std::vector<double> u0, const ExtremaFunction& extrema = {});

 private:
  const SemiDiscrete& sys_;
  IntegratorConfig cfg_;
  MassSolver solver_;
  std::vector<double> work_;
};

}  // namespace sbpcg
