#include "sbpcg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "sbpcg/error.hpp"

namespace sbpcg {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  if (n == 1) p0 = 1.0;
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("gauss_legendre: need at least one point");
  QuadratureRule q;
  q.degree = 2 * n - 1;
  q.points.resize(static_cast<std::size_t>(n));
  q.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    // Roots come out descending on [-1,1]; t = (1-x)/2 is ascending on [0,1].
    const auto j = static_cast<std::size_t>(i);
    q.points[j] = {0.5 * (1.0 - x), 0.0};
    q.weights[j] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return q;
}

namespace {

struct Builder {
  QuadratureRule q;

  void centroid(double w) { add(1.0 / 3.0, 1.0 / 3.0, w); }
  // barycentric (a, a, 1-2a)
  void orbit3(double a, double w) {
    const double c = 1.0 - 2.0 * a;
    add(a, a, w);
    add(a, c, w);
    add(c, a, w);
  }
  // barycentric (a, b, 1-a-b), all permutations
  void orbit6(double a, double b, double w) {
    const double c = 1.0 - a - b;
    add(a, b, w);
    add(b, a, w);
    add(a, c, w);
    add(c, a, w);
    add(b, c, w);
    add(c, b, w);
  }
  void add(double x, double y, double w) {
    q.points.push_back({x, y});
    q.weights.push_back(0.5 * w);
  }
};

// Symmetric Gauss rules on the triangle (Dunavant family), weights
// normalised to sum to one before scaling by the reference area.
QuadratureRule triangle_rule(int degree) {
  Builder b;
  switch (degree) {
    case 1:
      b.q.degree = 1;
      b.centroid(1.0);
      break;
    case 2:
      b.q.degree = 2;
      b.orbit3(1.0 / 6.0, 1.0 / 3.0);
      break;
    case 3:
    case 4:
      b.q.degree = 4;
      b.orbit3(0.4459484909159648863183, 0.223381589678011465695);
      b.orbit3(0.09157621350977074345957, 0.1099517436553218676383);
      break;
    case 5:
      b.q.degree = 5;
      b.centroid(0.225);
      b.orbit3(0.4701420641051150897704, 0.1323941527885061807376);
      b.orbit3(0.101286507323456338801, 0.1259391805448271525957);
      break;
    case 6:
      b.q.degree = 6;
      b.orbit3(0.2492867451709104212916, 0.1167862757263793660253);
      b.orbit3(0.06308901449150222834033, 0.05084490637020681692094);
      b.orbit6(0.05314504984481694735325, 0.3103524510337844054166, 0.08285107561837357519355);
      break;
    case 7:
    case 8:
      b.q.degree = 8;
      b.centroid(0.1443156076777871682511);
      b.orbit3(0.4592925882927231560288, 0.0950916342672846247939);
      b.orbit3(0.1705693077517602066223, 0.1032173705347182502818);
      b.orbit3(0.05054722831703097545842, 0.03245849762319808031093);
      b.orbit6(0.008394777409957605337214, 0.2631128296346381134218, 0.02723031417443499426484);
      break;
    default:
      throw InvalidArgument("quad_rule: triangle degree must be in [1, 8]");
  }
  return b.q;
}

}  // namespace

QuadratureRule quad_rule(Domain domain, int degree) {
  if (degree < 1 || degree > 8) throw InvalidArgument("quad_rule: degree must be in [1, 8]");
  if (domain == Domain::triangle) return triangle_rule(degree);
  return gauss_legendre((degree + 2) / 2);
}

}  // namespace sbpcg
