#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sbpcg/basis.hpp"
#include "sbpcg/mesh.hpp"

namespace sbpcg {

/// Global continuous-Galerkin numbering.
///
/// 2D: vertex DoFs carry the vertex index; edge DoFs follow, p-1 per edge,
/// ordered from the lower to the higher global vertex index; interior DoFs
/// come last. 1D: DoFs run left to right, so DoF 0 sits at the left end and
/// the last DoF at the right end.
class DofMap {
 public:
  DofMap(const Mesh& mesh, int order, BasisKind kind);

  int order() const { return p_; }
  BasisKind kind() const { return kind_; }
  std::size_t num_dofs() const { return ndofs_; }
  std::size_t dofs_per_element() const { return nloc_; }
  std::span<const std::size_t> element_dofs(std::size_t e) const { return {dofs_.data() + e * nloc_, nloc_}; }
  /// DoFs whose basis functions do not vanish on the boundary.
  const std::vector<std::size_t>& boundary_dofs() const { return boundary_; }
  bool is_boundary_dof(std::size_t d) const { return on_boundary_[d]; }

 private:
  int p_;
  BasisKind kind_;
  std::size_t ndofs_ = 0;
  std::size_t nloc_ = 0;
  std::vector<std::size_t> dofs_;
  std::vector<std::size_t> boundary_;
  std::vector<bool> on_boundary_;
};

/// Affine element map x = x0 + J xi.
struct ElementGeometry {
  Point origin;
  double jac[2][2];
  double inv[2][2];
  double det;  // |K| / |K_ref|

  Point map(const Point& xi) const {
    return {origin.x + jac[0][0] * xi.x + jac[0][1] * xi.y, origin.y + jac[1][0] * xi.x + jac[1][1] * xi.y};
  }
  /// Reference gradient -> physical gradient (J^{-T} g).
  Point push_grad(const Point& g) const {
    return {inv[0][0] * g.x + inv[1][0] * g.y, inv[0][1] * g.x + inv[1][1] * g.y};
  }
};

using ScalarFunction = std::function<double(const Point&)>;

/// Boundary face with its quadrature data.
struct FaceTrace {
  std::size_t element;
  int local_face;
  std::string tag;
  Point normal;
  std::vector<std::size_t> dofs;  // global DoFs of the functions alive on the face
  std::vector<Point> points;      // physical quadrature points
  std::vector<double> weights;    // physical weights (include the face length)
  std::vector<double> phi;        // phi[q * dofs.size() + i]
};

/// Mesh + basis + DoF map.
class FunctionSpace {
 public:
  FunctionSpace(std::shared_ptr<const Mesh> mesh, int order, BasisKind kind);

  const Mesh& mesh() const { return *mesh_; }
  std::shared_ptr<const Mesh> mesh_ptr() const { return mesh_; }
  const Basis& basis() const { return basis_; }
  const DofMap& dofmap() const { return dofmap_; }
  int order() const { return basis_.order(); }
  int dimension() const { return mesh_->dimension(); }
  std::size_t num_dofs() const { return dofmap_.num_dofs(); }

  ElementGeometry geometry(std::size_t e) const;
  /// Physical location of each DoF's lattice node.
  std::vector<Point> dof_coordinates() const;

  /// Coefficients whose finite element function matches f at every lattice
  /// node. Exact for polynomials of degree <= p.
  std::vector<double> interpolate(const ScalarFunction& f) const;
  /// Component c of an m-component field, DoF-major layout.
  void interpolate_component(const ScalarFunction& f, std::size_t m, std::size_t c, std::span<double> u) const;
  /// Values of the finite element function at the lattice nodes (identity
  /// for Lagrange).
  std::vector<double> nodal_values(std::span<const double> u, std::size_t m = 1, std::size_t c = 0) const;
  /// Value at a reference point of element e.
  double evaluate(std::span<const double> u, std::size_t e, const Point& xi, std::size_t m = 1,
                  std::size_t c = 0) const;

  std::vector<FaceTrace> boundary_trace(int edge_degree) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  Basis basis_;
  DofMap dofmap_;
  std::vector<double> vandermonde_inv_;  // nodal values -> local coefficients
};

}  // namespace sbpcg
