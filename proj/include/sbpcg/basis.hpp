#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "sbpcg/mesh.hpp"

namespace sbpcg {

enum class BasisKind { lagrange, bernstein };

BasisKind parse_basis_kind(const std::string& s);
std::string to_string(BasisKind k);

/// Reference-element basis of order p on [0,1] (dim 1) or on the triangle
/// (0,0),(1,0),(0,1) (dim 2).
///
/// Functions are indexed by barycentric multi-indices alpha (|alpha| = p),
/// ordered vertices first, then edge by edge (edge k runs from vertex k to
/// vertex k+1), then the interior. Lagrange nodes sit at alpha/p; Bernstein
/// uses the same layout for its control points.
class Basis {
 public:
  Basis(BasisKind kind, int order, int dim);

  BasisKind kind() const { return kind_; }
  int order() const { return p_; }
  int dimension() const { return dim_; }
  std::size_t size() const { return alpha_.size(); }

  const std::vector<std::array<int, 3>>& multi_indices() const { return alpha_; }
  /// Lattice points alpha/p in reference coordinates.
  std::vector<Point> nodes() const;
  /// Local indices of the functions that do not vanish on local face f.
  std::vector<std::size_t> face_functions(int face) const;

  /// Throws InvalidArgument for points outside the reference element
  /// (tolerance 1e-12).
  void eval(const Point& xi, std::span<double> out) const;
  void eval_grad(const Point& xi, std::span<Point> out) const;
  std::vector<double> eval(const Point& xi) const;
  std::vector<Point> eval_grad(const Point& xi) const;

 private:
  std::array<double, 3> barycentric(const Point& xi) const;

  BasisKind kind_;
  int p_;
  int dim_;
  std::vector<std::array<int, 3>> alpha_;
};

}  // namespace sbpcg
