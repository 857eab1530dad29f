#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sbpcg/dense.hpp"
#include "sbpcg/space.hpp"
#include "sbpcg/sparse.hpp"

namespace sbpcg {

/// Advection velocity a(x). `divergence` may be left empty for
/// divergence-free fields.
struct VelocityField {
  std::function<Point(const Point&)> value;
  std::function<double(const Point&)> divergence;
  bool constant = false;

  static VelocityField uniform(Point a);
};

/// Default volume/edge quadrature degree for order p: max(2p, p+2), and at
/// least 6.
int default_quad_degree(int p);

/// Per-element dense blocks are computed in parallel and scattered in
/// element order, so the result does not depend on the thread count.
enum class Execution { serial, parallel };

SparseMatrix assemble_mass(const FunctionSpace& space, int quad_degree, Execution ex = Execution::parallel);

/// Q for the operator a.grad(u) with test functions in the rows:
///   Q(alpha) = alpha (-K^T + B) + (1 - alpha) (K + D)
/// with K_ij = int phi_i a.grad(phi_j), D_ij = int phi_i phi_j div(a) and
/// B the boundary form at `edge_degree`. alpha = 1 is the integrated-by-parts
/// form, alpha = 0 the advective form, alpha = 0.5 the split form. When not
/// given, alpha is 1 for constant fields and 0.5 otherwise.
SparseMatrix assemble_stiffness(const FunctionSpace& space, const VelocityField& a, int quad_degree,
                                int edge_degree, std::optional<double> alpha = std::nullopt,
                                Execution ex = Execution::parallel);

/// B_ij = boundary integral of a.n phi_i phi_j.
SparseMatrix assemble_boundary_quadratic(const FunctionSpace& space, const VelocityField& a, int edge_degree);

struct GlobalOperators {
  SparseMatrix M;   // scalar mass; systems use M kron I_m implicitly
  SparseMatrix Q;
  SparseMatrix Bq;
  std::size_t components = 1;
  int volume_degree = 0;
  int edge_degree = 0;
  double alpha = 1.0;
  std::vector<bool> boundary;  // per row of Q
};

/// Scalar advection operators.
GlobalOperators assemble_scalar(const FunctionSpace& space, const VelocityField& a, int volume_degree,
                                int edge_degree, std::optional<double> alpha = std::nullopt);

/// Constant-coefficient system u_t + A u_x + B u_y = ...:
/// Q = Q_x kron A + Q_y kron B, DoF-major layout. In 1D B is ignored.
GlobalOperators assemble_system(const FunctionSpace& space, const DenseMatrix& A, const DenseMatrix& B,
                                int volume_degree, int edge_degree, std::optional<double> alpha = std::nullopt);

struct SbpReport {
  double interior_residual = 0.0;
  double boundary_residual = 0.0;
  double q_norm = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Residual Q + Q^T - Bq split by interior/boundary rows; passes when both
/// are <= 1e-12 ||Q||_max. Systems whose coefficient matrices are only
/// symmetrizable pass their energy weight W (m x m); the residual is then
/// taken of (I kron W) Q, (I kron W) Bq.
SbpReport check_sbp(const GlobalOperators& ops, const DenseMatrix& weight = {});

/// (I_n kron W) A for a DoF-major operator with m = W.rows() components.
SparseMatrix block_scale_rows(const SparseMatrix& a, const DenseMatrix& w);

}  // namespace sbpcg
