#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "sbpcg/assembly.hpp"
#include "sbpcg/error.hpp"
#include "sbpcg/sat.hpp"
#include "sbpcg/timeint.hpp"

using namespace sbpcg;

namespace {

const RhsFunction decay = [](double, std::span<const double> u, std::span<double> du) {
  for (std::size_t i = 0; i < u.size(); ++i) du[i] = -u[i];
};

double decay_error(Scheme s, int n) {
  std::vector<double> u{1.0};
  const double dt = 1.0 / n;
  for (int k = 0; k < n; ++k) ssp_step(s, decay, k * dt, dt, u);
  return std::abs(u[0] - std::exp(-1.0));
}

}  // namespace

TEST_CASE("SSPRK22 single step") {
  std::vector<double> u{1.0};
  ssp_step(Scheme::ssprk22, decay, 0.0, 0.1, u);
  CHECK(u[0] == doctest::Approx(0.905).epsilon(1e-14));
}

TEST_CASE("zero right-hand side leaves the state unchanged") {
  const RhsFunction zero = [](double, std::span<const double>, std::span<double> du) {
    std::fill(du.begin(), du.end(), 0.0);
  };
  for (auto s : {Scheme::ssprk22, Scheme::ssprk33, Scheme::ssprk54}) {
    std::vector<double> u{0.1, -2.0, 3.5};
    const auto u0 = u;
    ssp_step(s, zero, 0.3, 0.05, u);
    CHECK(u == u0);
  }
}

TEST_CASE("observed orders of accuracy") {
  for (auto s : {Scheme::ssprk22, Scheme::ssprk33, Scheme::ssprk54}) {
    const double e1 = decay_error(s, 20), e2 = decay_error(s, 40);
    const double order = std::log2(e1 / e2);
    CHECK(std::abs(order - scheme_order(s)) < 0.1);
  }
}

TEST_CASE("time-dependent forcing uses the stage times") {
  // u' = cos t, u(0) = 0: exact sin t.
  const RhsFunction f = [](double t, std::span<const double>, std::span<double> du) { du[0] = std::cos(t); };
  for (auto s : {Scheme::ssprk22, Scheme::ssprk33, Scheme::ssprk54}) {
    std::vector<double> u{0.0};
    const int n = 40;
    for (int k = 0; k < n; ++k) ssp_step(s, f, k * (1.0 / n), 1.0 / n, u);
    CHECK(std::abs(u[0] - std::sin(1.0)) < 1e-3);
  }
}

TEST_CASE("non-finite states are reported") {
  const RhsFunction bad = [](double, std::span<const double>, std::span<double> du) {
    du[0] = std::numeric_limits<double>::quiet_NaN();
  };
  std::vector<double> u{1.0};
  CHECK_THROWS_AS(ssp_step(Scheme::ssprk33, bad, 0.0, 0.1, u), BlowUpError);
  CHECK_THROWS_AS(ssp_step(Scheme::ssprk33, decay, 0.0, 0.0, u), InvalidArgument);
}

TEST_CASE("mass solves") {
  const auto I = SparseMatrix::identity(4);
  const std::vector<double> r{1, -2, 3, 0.5};
  CHECK(mass_solve(I, r) == r);

  auto mesh = std::make_shared<const Mesh>(interval(2));
  const FunctionSpace V(mesh, 1, BasisKind::lagrange);
  const auto M = assemble_mass(V, 6);
  const std::vector<double> x{1, 2, 3};
  std::vector<double> mx(3);
  M.multiply(x, mx);
  const auto y = mass_solve(M, mx);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(y[i] - x[i]) < 1e-11);
  const auto z = mass_solve(M, std::vector<double>(3, 0.0));
  for (double v : z) CHECK(v == 0.0);
}

TEST_CASE("CG and Cholesky mass solvers agree") {
  auto mesh = std::make_shared<const Mesh>(unit_disk(4));
  const FunctionSpace V(mesh, 3, BasisKind::bernstein);
  const auto M = assemble_mass(V, 6);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  const std::size_t m = 2;
  std::vector<double> r(m * V.num_dofs()), xc(r.size()), xl(r.size());
  for (auto& v : r) v = nd(rng);
  MassSolver cg(M, m, MassSolverKind::cg, 1e-13, 5000);
  MassSolver chol(M, m, MassSolverKind::cholesky);
  cg.solve(r, xc);
  chol.solve(r, xl);
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(std::abs(xc[i] - xl[i]) < 1e-8 * (1.0 + std::abs(xl[i])));
  CHECK(cg.last_iterations() > 0);
}

TEST_CASE("integrator is linear in the initial state") {
  auto mesh = std::make_shared<const Mesh>(interval(10));
  const FunctionSpace V(mesh, 2, BasisKind::lagrange);
  const auto ops = assemble_scalar(V, VelocityField::uniform({1.0, 0.0}), 6, 6);
  const auto pi = scalar_sat_1d(V, 1.0, -1.0, -1.0);
  const SemiDiscrete sys{add(pi.matrix(), ops.Q, 1.0, -1.0), ops.M, 1, &pi, {}};
  IntegratorConfig cfg;
  cfg.scheme = Scheme::ssprk33;
  cfg.dt = 0.005;
  cfg.t_end = 0.2;
  cfg.mass_solver = MassSolverKind::cholesky;
  std::mt19937_64 rng(6);
  std::normal_distribution<double> nd;
  std::vector<double> a(V.num_dofs()), b(V.num_dofs()), ab(V.num_dofs());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = 0.1 * nd(rng);
    b[i] = 0.1 * nd(rng);
    ab[i] = 2.0 * a[i] - 3.0 * b[i];
  }
  Integrator ia(sys, cfg), ib(sys, cfg), iab(sys, cfg);
  const auto ta = ia.run(a), tb = ib.run(b), tab = iab.run(ab);
  CHECK(ta.steps == 40);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(std::abs(tab.state[i] - (2.0 * ta.state[i] - 3.0 * tb.state[i])) < 1e-12);
}

TEST_CASE("homogeneous 1D advection dissipates energy") {
  auto mesh = std::make_shared<const Mesh>(interval(20, IntervalKind::random, 3));
  const FunctionSpace V(mesh, 2, BasisKind::lagrange);
  const auto ops = assemble_scalar(V, VelocityField::uniform({1.0, 0.0}), 6, 6);
  const auto pi = scalar_sat_1d(V, 1.0, -1.0, -1.0);
  const SemiDiscrete sys{add(pi.matrix(), ops.Q, 1.0, -1.0), ops.M, 1, &pi, {}};
  IntegratorConfig cfg;
  cfg.scheme = Scheme::ssprk33;
  cfg.dt = 0.05 * mesh->min_element_size();
  cfg.t_end = 0.8;
  auto u0 = V.interpolate([](const Point& x) { return std::exp(-50.0 * (x.x - 0.4) * (x.x - 0.4)); });
  Integrator integ(sys, cfg);
  const auto tr = integ.run(u0);
  REQUIRE(tr.history.size() > 10);
  for (std::size_t k = 1; k < tr.history.size(); ++k)
    CHECK(tr.history[k].energy <= tr.history[k - 1].energy + 1e-12);
  CHECK(tr.history.back().energy < 0.5 * tr.history.front().energy);
}

TEST_CASE("blow-up aborts the run") {
  // u' = u grows past the threshold.
  auto mesh = std::make_shared<const Mesh>(interval(1));
  const FunctionSpace V(mesh, 1, BasisKind::lagrange);
  const auto M = assemble_mass(V, 6);
  const SemiDiscrete sys{M, M, 1, nullptr, {}};
  IntegratorConfig cfg;
  cfg.scheme = Scheme::ssprk22;
  cfg.dt = 0.1;
  cfg.t_end = 10.0;
  cfg.blowup_threshold = 2.0;
  Integrator integ(sys, cfg);
  const auto tr = integ.run({1.0, 1.0});
  CHECK(tr.aborted);
  CHECK(tr.max_value > 2.0);
  CHECK(tr.last_good_step == tr.steps - 1);
  CHECK(tr.steps == 7);  // growth 1.105 per step: 1.105^7 > 2 > 1.105^6
  CHECK_FALSE(tr.diagnostic.empty());
}
