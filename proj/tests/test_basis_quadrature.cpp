#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sbpcg/basis.hpp"
#include "sbpcg/error.hpp"
#include "sbpcg/quadrature.hpp"
#include "sbpcg/space.hpp"

using namespace sbpcg;

namespace {

double integrate(const QuadratureRule& q, int m, int n) {
  double s = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) s += q.weights[k] * std::pow(q.points[k].x, m) * std::pow(q.points[k].y, n);
  return s;
}

}  // namespace

TEST_CASE("triangle rules integrate monomials exactly") {
  for (int d = 1; d <= 8; ++d) {
    const auto q = quad_rule(Domain::triangle, d);
    CHECK(q.degree >= d);
    for (int m = 0; m <= d; ++m)
      for (int n = 0; m + n <= d; ++n) CHECK(std::abs(integrate(q, m, n) - oracle::triangle_monomial(m, n)) < 1e-15);
  }
  const auto c = quad_rule(Domain::triangle, 1);
  REQUIRE(c.size() == 1);
  CHECK(c.weights[0] == doctest::Approx(0.5));
  CHECK(c.points[0].x == doctest::Approx(1.0 / 3.0));
  CHECK(c.points[0].y == doctest::Approx(1.0 / 3.0));
  CHECK(integrate(quad_rule(Domain::triangle, 6), 4, 2) ==
        doctest::Approx(oracle::triangle_monomial(4, 2)).epsilon(1e-14));
}

TEST_CASE("interval and edge rules") {
  const auto e5 = quad_rule(Domain::edge, 5);
  CHECK(e5.size() == 3);
  double w = 0.0;
  for (double x : e5.weights) w += x;
  CHECK(w == doctest::Approx(1.0).epsilon(1e-15));
  for (int d = 1; d <= 8; ++d) {
    const auto q = quad_rule(Domain::interval, d);
    for (int m = 0; m <= d; ++m) CHECK(std::abs(integrate(q, m, 0) - 1.0 / (m + 1)) < 1e-15);
  }
  CHECK_THROWS_AS(quad_rule(Domain::triangle, 0), InvalidArgument);
  CHECK_THROWS_AS(quad_rule(Domain::edge, 9), InvalidArgument);
}

TEST_CASE("basis values at known points") {
  const Basis l1(BasisKind::lagrange, 1, 1);
  auto v = l1.eval({0.0, 0.0});
  CHECK(v[0] == 1.0);
  CHECK(v[1] == 0.0);
  const auto g = l1.eval_grad({0.3, 0.0});
  CHECK(g[0].x == doctest::Approx(-1.0));
  CHECK(g[1].x == doctest::Approx(1.0));

  const Basis b2(BasisKind::bernstein, 2, 1);
  const auto nodes = b2.nodes();
  v = b2.eval({0.5, 0.0});
  // Vertices first, then the interior function.
  CHECK(v[0] == doctest::Approx(0.25));
  CHECK(v[1] == doctest::Approx(0.25));
  CHECK(v[2] == doctest::Approx(0.5));
  CHECK(nodes[2].x == doctest::Approx(0.5));

  const Basis t1(BasisKind::lagrange, 1, 2);
  const auto tg = t1.eval_grad({0.2, 0.3});
  CHECK(tg[0].x == doctest::Approx(-1.0));
  CHECK(tg[0].y == doctest::Approx(-1.0));
  CHECK(tg[1].x == doctest::Approx(1.0));
  CHECK(tg[1].y == doctest::Approx(0.0));
  CHECK(tg[2].x == doctest::Approx(0.0));
  CHECK(tg[2].y == doctest::Approx(1.0));
}

TEST_CASE("partition of unity and Lagrange nodality") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int dim : {1, 2})
    for (auto kind : {BasisKind::lagrange, BasisKind::bernstein})
      for (int p = 1; p <= 3; ++p) {
        const Basis b(kind, p, dim);
        CHECK(b.size() == static_cast<std::size_t>(dim == 1 ? p + 1 : (p + 1) * (p + 2) / 2));
        for (int k = 0; k < 20; ++k) {
          Point xi{u(rng), dim == 2 ? u(rng) : 0.0};
          if (xi.x + xi.y > 1.0) xi = {1.0 - xi.x, 1.0 - xi.y};
          const auto v = b.eval(xi);
          double s = 0.0;
          for (double x : v) s += x;
          CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
          const auto g = b.eval_grad(xi);
          Point gs;
          for (const auto& x : g) gs = {gs.x + x.x, gs.y + x.y};
          CHECK(std::abs(gs.x) < 1e-12);
          CHECK(std::abs(gs.y) < 1e-12);
        }
        if (kind == BasisKind::lagrange) {
          const auto nodes = b.nodes();
          for (std::size_t i = 0; i < nodes.size(); ++i) {
            const auto v = b.eval(nodes[i]);
            for (std::size_t j = 0; j < v.size(); ++j) CHECK(std::abs(v[j] - (i == j ? 1.0 : 0.0)) < 1e-13);
          }
        }
      }
}

TEST_CASE("gradients match central finite differences") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.05, 0.45);
  const double h = 1e-6;
  for (auto kind : {BasisKind::lagrange, BasisKind::bernstein})
    for (int p = 1; p <= 3; ++p) {
      const Basis b(kind, p, 2);
      for (int k = 0; k < 5; ++k) {
        const Point xi{u(rng), u(rng)};
        const auto g = b.eval_grad(xi);
        const auto xp = b.eval({xi.x + h, xi.y}), xm = b.eval({xi.x - h, xi.y});
        const auto yp = b.eval({xi.x, xi.y + h}), ym = b.eval({xi.x, xi.y - h});
        for (std::size_t i = 0; i < b.size(); ++i) {
          CHECK(std::abs(g[i].x - (xp[i] - xm[i]) / (2 * h)) < 1e-6);
          CHECK(std::abs(g[i].y - (yp[i] - ym[i]) / (2 * h)) < 1e-6);
        }
      }
    }
}

TEST_CASE("points outside the reference element are rejected") {
  const Basis b(BasisKind::lagrange, 2, 2);
  CHECK_THROWS_AS(b.eval({0.7, 0.7}), InvalidArgument);
  CHECK_THROWS_AS(b.eval({-0.1, 0.2}), InvalidArgument);
  CHECK_NOTHROW(b.eval({0.5, 0.5}));
  const Basis b1(BasisKind::bernstein, 1, 1);
  CHECK_THROWS_AS(b1.eval({1.01, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(Basis(BasisKind::lagrange, 4, 2), InvalidArgument);
}

TEST_CASE("both bases reproduce polynomials of degree p") {
  auto mesh = std::make_shared<const Mesh>(unit_disk(2));
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto kind : {BasisKind::lagrange, BasisKind::bernstein})
    for (int p = 1; p <= 3; ++p) {
      const FunctionSpace V(mesh, p, kind);
      const ScalarFunction f = [p](const Point& x) {
        double v = 0.3 - 0.7 * x.x + 1.1 * x.y;
        if (p >= 2) v += 0.4 * x.x * x.y - 0.9 * x.y * x.y;
        if (p >= 3) v += 1.3 * x.x * x.x * x.x - 0.2 * x.x * x.y * x.y;
        return v;
      };
      const auto c = V.interpolate(f);
      for (std::size_t e = 0; e < mesh->num_elements(); e += 5) {
        Point xi{u(rng), u(rng)};
        if (xi.x + xi.y > 1.0) xi = {1.0 - xi.x, 1.0 - xi.y};
        CHECK(std::abs(V.evaluate(c, e, xi) - f(V.geometry(e).map(xi))) < 1e-12);
      }
    }
}
