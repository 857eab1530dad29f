#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sbpcg/assembly.hpp"
#include "sbpcg/error.hpp"
#include "sbpcg/sat.hpp"
#include "sbpcg/spectra.hpp"

using namespace sbpcg;

namespace {

std::shared_ptr<const Mesh> two_cells() { return std::make_shared<const Mesh>(interval(2)); }

const DenseMatrix kZero2(2, 2);

}  // namespace

TEST_CASE("1D SAT penalty values") {
  const FunctionSpace V(two_cells(), 1, BasisKind::lagrange);
  const auto zero = [](double) { return 0.0; };
  const auto pi = scalar_sat_1d(V, 1.0, -1.0, -1.0, zero, zero);
  const std::vector<double> u{2.0, 0.0, 0.0};
  std::vector<double> r(3);
  pi.matrix().multiply(u, r);
  CHECK(r[0] == doctest::Approx(-2.0));
  CHECK(r[2] == 0.0);

  const auto back = scalar_sat_1d(V, -1.0, -1.0, -1.0, zero, zero);
  CHECK(back.matrix().at(0, 0) == 0.0);
  CHECK(back.matrix().at(2, 2) == doctest::Approx(-1.0));
}

TEST_CASE("1D SAT threshold tau < -1/2") {
  const FunctionSpace V(two_cells(), 1, BasisKind::lagrange);
  CHECK_THROWS_AS(scalar_sat_1d(V, 1.0, -0.49, -1.0), StabilityError);
  CHECK_THROWS_AS(scalar_sat_1d(V, 1.0, -1.0, -0.49), StabilityError);
  const auto ops = assemble_scalar(V, VelocityField::uniform({1.0, 0.0}), 6, 6);
  const auto pi = scalar_sat_1d(V, 1.0, -0.51, -0.51);
  const auto e = extreme_eigs(stability_matrix(ops, &pi), 3);
  CHECK(e.all.back() <= 1e-12 * ops.Q.max_abs());
}

TEST_CASE("3x3 stability matrix with tau = -1") {
  const FunctionSpace V(two_cells(), 1, BasisKind::lagrange);
  const auto ops = assemble_scalar(V, VelocityField::uniform({1.0, 0.0}), 6, 6);
  const auto pi = scalar_sat_1d(V, 1.0, -1.0, -1.0);
  const auto S = stability_matrix(ops, &pi);
  // 2 Pi - (Q + Q^T) with Pi(0,0) = -1 and Q + Q^T = diag(-1, 0, 1).
  const double d[] = {-1.0, 0.0, -1.0};
  CHECK(oracle::max_abs_diff(S, DenseMatrix::diagonal(d)) < 1e-15);
  const auto ev = oracle::jacobi_eigenvalues(S);
  CHECK(ev.back() <= 1e-15);
  const double z[] = {-1.0, 0.0, 1.0};
  CHECK(oracle::max_abs_diff(stability_matrix(ops), DenseMatrix::diagonal(z)) < 1e-15);
}

TEST_CASE("2D upwind SAT acts on inflow faces only") {
  auto mesh = std::make_shared<const Mesh>(unit_square(4));
  const FunctionSpace V(mesh, 1, BasisKind::lagrange);
  const auto a = VelocityField::uniform({1.0, 0.0});
  const auto pi = scalar_sat_2d(V, a, {}, 6);
  const auto xs = V.dof_coordinates();
  const auto diag = pi.matrix().diagonal();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].x > 1e-12) {
      CHECK(diag[i] == 0.0);
    } else {
      CHECK(diag[i] < 0.0);
    }
  }
  for (const auto& r : pi.records()) {
    if (r.normal.x < -0.5) {
      CHECK(r.sat.state(0, 0) == doctest::Approx(-1.0));
    } else {
      CHECK(r.sat.state(0, 0) == 0.0);
    }
  }
  const auto ops = assemble_scalar(V, a, 6, 6);
  CHECK(extreme_eigs(stability_matrix(ops, &pi), 1).positives[0] <= 1e-13);
}

TEST_CASE("rotation field is nearly tangential on the disk boundary") {
  auto mesh = std::make_shared<const Mesh>(unit_disk(8));
  const double h = mesh->max_element_size();
  VelocityField a;
  a.value = [](const Point& x) { return Point{2 * std::numbers::pi * x.y, -2 * std::numbers::pi * x.x}; };
  const FunctionSpace V(mesh, 2, BasisKind::bernstein);
  const auto pi = scalar_sat_2d(V, a, {}, 6);
  for (const auto& r : pi.records()) {
    const Point v = a.value(r.x);
    CHECK(std::abs(v.x * r.normal.x + v.y * r.normal.y) <= 2 * std::numbers::pi * h);
  }
}

TEST_CASE("characteristic decomposition") {
  SUBCASE("wave system") {
    const DenseMatrix A{{0, 1}, {1, 0}};
    const auto d = characteristic_decompose(A, kZero2, DenseMatrix::identity(2), {1.0, 0.0});
    CHECK(d.lambda[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.lambda[1] == doctest::Approx(-1.0).epsilon(1e-15));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(oracle::max_abs_diff(d.X, DenseMatrix{{s, s}, {s, -s}}) < 1e-14);
  }
  SUBCASE("zero operator") {
    const auto d = characteristic_decompose(kZero2, kZero2, DenseMatrix::identity(2), {0.6, 0.8});
    CHECK(d.lambda == std::vector<double>{0.0, 0.0});
    CHECK(d.zero.size() == 2);
    CHECK(oracle::max_abs_diff(d.X, DenseMatrix::identity(2)) == 0.0);
  }
  SUBCASE("R13 eigenvalues at any angle") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
    const double r2 = std::sqrt(2.0);
    const std::vector<double> expect{r2, r2 / 2, 0.0, 0.0, -r2 / 2, -r2};
    for (int k = 0; k < 10; ++k) {
      const double g = u(rng);
      const auto d = characteristic_decompose(r13_matrix(0.0), r13_matrix(std::numbers::pi / 2), r13_symmetrizer(),
                                              {std::cos(g), std::sin(g)});
      for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(d.lambda[i] - expect[i]) < 1e-12);
    }
  }
  SUBCASE("non-symmetrizable input is rejected") {
    const DenseMatrix A{{0, 1}, {0, 0}};
    CHECK_THROWS_AS(characteristic_decompose(A, kZero2, DenseMatrix::identity(2), {1.0, 0.0}), InvalidArgument);
  }
}

TEST_CASE("reflection bound for the wave system") {
  const DenseMatrix A{{0, 1}, {1, 0}};
  for (Point n : {Point{1.0, 0.0}, Point{-1.0, 0.0}}) {
    const auto d = characteristic_decompose(A, kZero2, DenseMatrix::identity(2), n);
    for (double r : {-0.99, -0.5, 0.0, 0.5, 0.99}) CHECK_NOTHROW(build_pi_system(d, DenseMatrix{{r}}));
    for (double r : {-1.5, -1.01, 1.01, 2.0}) CHECK_THROWS_AS(build_pi_system(d, DenseMatrix{{r}}), StabilityError);
  }
}

TEST_CASE("upwind system SAT penalises incoming characteristics") {
  const DenseMatrix A{{0, 1}, {1, 0}};
  const auto d = characteristic_decompose(A, kZero2, DenseMatrix::identity(2), {1.0, 0.0});
  const auto s = build_pi_system(d, {});
  // X Lambda^- X^T with Lambda^- = diag(0, -1).
  const DenseMatrix ref{{-0.5, 0.5}, {0.5, -0.5}};
  CHECK(oracle::max_abs_diff(s.state, ref) < 1e-15);
}

TEST_CASE("m = 1 system SAT matches the scalar SAT") {
  auto mesh = std::make_shared<const Mesh>(unit_square(3));
  const FunctionSpace V(mesh, 2, BasisKind::bernstein);
  const Point a{1.0, 0.5};
  const auto scalar = scalar_sat_2d(V, VelocityField::uniform(a), {}, 6);
  const auto system =
      system_sat(V, DenseMatrix{{a.x}}, DenseMatrix{{a.y}}, DenseMatrix{{1.0}}, {}, {}, 6);
  CHECK(oracle::max_abs_diff(scalar.matrix().to_dense(), system.matrix().to_dense()) < 1e-14);
}

TEST_CASE("R13 boundary operator") {
  const auto L = r13_boundary_matrix(3.0, -0.5, 0.0);
  const std::vector<double> row{-3, 1, 0, -3, 0, 0};
  for (std::size_t j = 0; j < 6; ++j) CHECK(L(0, j) == doctest::Approx(row[j]).epsilon(1e-15));
  const double diag[] = {19.0, 0.75};
  for (double g : {0.0, 0.3, 1.7, 4.0}) {
    const auto Lg = r13_boundary_matrix(3.0, -0.5, g);
    CHECK(oracle::max_abs_diff(Lg * r13_symmetrizer() * Lg.transpose(), DenseMatrix::diagonal(diag)) < 1e-14);
  }
  CHECK_THROWS_AS(build_pi_r13(3.0, -0.5, 0.0, R13Variant::delta, 0.0), StabilityError);
  CHECK_THROWS_AS(build_pi_r13(3.0, -0.5, 0.0, R13Variant::delta, 1.0), StabilityError);
  CHECK_THROWS_AS(build_pi_r13(3.0, -0.5, 0.0, R13Variant::eigen_shift, 0.1), StabilityError);
  for (double g : {0.0, 1.0, 2.5}) {
    const auto s = build_pi_r13(3.0, -0.5, g, R13Variant::delta, -2.0);
    const auto P = r13_symmetrizer();
    // P^{-1}(state - A_n/2) must be negative semi-definite.
    auto e = inverse(P) * (s.state - 0.5 * r13_matrix(g));
    e.symmetrize();
    CHECK(oracle::jacobi_eigenvalues(e).back() <= 1e-12);
    CHECK_NOTHROW(build_pi_r13(3.0, -0.5, g, R13Variant::eigen_shift, std::sqrt(2.0) / 2));
  }
}

TEST_CASE("A_alpha P is symmetric") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
  const auto A0 = r13_matrix(0.0);
  CHECK(A0(0, 1) == 1.0);
  CHECK(A0(1, 0) == 1.0);
  CHECK(A0(1, 3) == 1.0);
  CHECK(A0(3, 1) == 1.0);
  CHECK(A0(4, 2) == 0.5);
  CHECK(A0(2, 4) == 1.0);
  for (int k = 0; k < 20; ++k) CHECK((r13_matrix(u(rng)) * r13_symmetrizer()).asymmetry() <= 1e-14);
}

TEST_CASE("energy production is non-positive for random states") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> nd;
  auto mesh = std::make_shared<const Mesh>(unit_square(3));
  for (int p = 1; p <= 3; ++p) {
    const FunctionSpace V(mesh, p, BasisKind::bernstein);
    const auto a = VelocityField::uniform({1.0, 0.3});
    const auto ops = assemble_scalar(V, a, 6, 6);
    const auto pi = scalar_sat_2d(V, a, {}, 6);
    const auto S = stability_matrix(ops, &pi);
    const double qn = ops.Q.max_abs();
    std::vector<double> u(S.rows());
    for (int k = 0; k < 1000; ++k) {
      double uu = 0.0;
      for (auto& x : u) {
        x = nd(rng);
        uu += x * x;
      }
      const auto su = S * std::span<const double>(u);
      double e = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) e += u[i] * su[i];
      CHECK(e <= 1e-10 * uu * qn);
    }
  }
}
