#pragma once

#include <vector>

#include "sbpcg/mesh.hpp"

namespace sbpcg {

/// `edge` and `interval` are both the unit interval [0,1]; they are kept
/// apart so call sites say which integral they approximate.
enum class Domain { interval, triangle, edge };

struct QuadratureRule {
  std::vector<Point> points;  // interval rules use x only
  std::vector<double> weights;
  int degree = 0;  // exactness actually attained (may exceed the request)

  std::size_t size() const { return weights.size(); }
};

/// Gauss-Legendre rule with n points on [0,1].
QuadratureRule gauss_legendre(int n);

/// Smallest available rule exact for total degree d, 1 <= d <= 8. Triangle
/// rules live on the reference triangle (0,0),(1,0),(0,1), weights summing
/// to 1/2.
QuadratureRule quad_rule(Domain domain, int degree);

}  // namespace sbpcg
