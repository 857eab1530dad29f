#include "sbpcg/assembly.hpp"

#include <algorithm>
#include <cmath>

#include "sbpcg/error.hpp"
#include "sbpcg/quadrature.hpp"

namespace sbpcg {

VelocityField VelocityField::uniform(Point a) {
  VelocityField v;
  v.value = [a](const Point&) { return a; };
  v.constant = true;
  return v;
}

int default_quad_degree(int p) { return std::max({2 * p, p + 2, 6}); }

namespace {

// Basis data tabulated at the quadrature points of the reference element.
struct Tabulation {
  QuadratureRule rule;
  std::size_t n = 0;
  std::vector<double> phi;   // [q*n + i]
  std::vector<Point> dphi;   // reference gradients
};

Tabulation tabulate(const FunctionSpace& s, int degree) {
  Tabulation t;
  t.rule = quad_rule(s.dimension() == 1 ? Domain::interval : Domain::triangle, degree);
  t.n = s.basis().size();
  t.phi.resize(t.rule.size() * t.n);
  t.dphi.resize(t.rule.size() * t.n);
  for (std::size_t q = 0; q < t.rule.size(); ++q) {
    s.basis().eval(t.rule.points[q], std::span<double>(t.phi.data() + q * t.n, t.n));
    s.basis().eval_grad(t.rule.points[q], std::span<Point>(t.dphi.data() + q * t.n, t.n));
  }
  return t;
}

template <class BlockFn>
SparseMatrix assemble_blocks(const FunctionSpace& s, Execution ex, BlockFn&& fn) {
  const std::size_t ne = s.mesh().num_elements();
  const std::size_t n = s.basis().size();
  // Checked up front: exceptions must not escape the parallel loop.
  for (std::size_t e = 0; e < ne; ++e)
    if (!(s.geometry(e).det > 0.0)) throw MeshError("singular element Jacobian in element " + std::to_string(e));
  std::vector<double> blocks(ne * n * n, 0.0);
  const long nel = static_cast<long>(ne);
  if (ex == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (long e = 0; e < nel; ++e) fn(static_cast<std::size_t>(e), blocks.data() + static_cast<std::size_t>(e) * n * n);
  } else {
    for (long e = 0; e < nel; ++e) fn(static_cast<std::size_t>(e), blocks.data() + static_cast<std::size_t>(e) * n * n);
  }
  std::vector<Triplet> trip;
  trip.reserve(ne * n * n);
  for (std::size_t e = 0; e < ne; ++e) {
    const auto d = s.dofmap().element_dofs(e);
    const double* b = blocks.data() + e * n * n;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) trip.push_back({d[i], d[j], b[i * n + j]});
  }
  return SparseMatrix::from_triplets(s.num_dofs(), s.num_dofs(), std::move(trip));
}

}  // namespace

SparseMatrix assemble_mass(const FunctionSpace& space, int quad_degree, Execution ex) {
  const Tabulation t = tabulate(space, quad_degree);
  return assemble_blocks(space, ex, [&](std::size_t e, double* blk) {
    const auto g = space.geometry(e);
    const std::size_t n = t.n;
    for (std::size_t q = 0; q < t.rule.size(); ++q) {
      const double w = t.rule.weights[q] * g.det;
      const double* phi = t.phi.data() + q * n;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) blk[i * n + j] += w * phi[i] * phi[j];
    }
  });
}

SparseMatrix assemble_boundary_quadratic(const FunctionSpace& space, const VelocityField& a, int edge_degree) {
  std::vector<Triplet> trip;
  for (const auto& f : space.boundary_trace(edge_degree)) {
    const std::size_t nf = f.dofs.size();
    for (std::size_t q = 0; q < f.points.size(); ++q) {
      const Point v = a.value(f.points[q]);
      const double an = v.x * f.normal.x + v.y * f.normal.y;
      const double* phi = f.phi.data() + q * nf;
      for (std::size_t i = 0; i < nf; ++i)
        for (std::size_t j = 0; j < nf; ++j) trip.push_back({f.dofs[i], f.dofs[j], f.weights[q] * an * phi[i] * phi[j]});
    }
  }
  return SparseMatrix::from_triplets(space.num_dofs(), space.num_dofs(), std::move(trip));
}

SparseMatrix assemble_stiffness(const FunctionSpace& space, const VelocityField& a, int quad_degree, int edge_degree,
                                std::optional<double> alpha_opt, Execution ex) {
  const double alpha = alpha_opt.value_or(a.constant ? 1.0 : 0.5);
  if (alpha < 0.0 || alpha > 1.0) throw InvalidArgument("split alpha must lie in [0, 1]");
  const Tabulation t = tabulate(space, quad_degree);
  const SparseMatrix volume = assemble_blocks(space, ex, [&](std::size_t e, double* blk) {
    const auto g = space.geometry(e);
    const std::size_t n = t.n;
    std::vector<double> adv(n);
    for (std::size_t q = 0; q < t.rule.size(); ++q) {
      const double w = t.rule.weights[q] * g.det;
      const Point x = g.map(t.rule.points[q]);
      const Point v = a.value(x);
      const double div = a.divergence ? a.divergence(x) : 0.0;
      const double* phi = t.phi.data() + q * n;
      for (std::size_t j = 0; j < n; ++j) {
        const Point gp = g.push_grad(t.dphi[q * n + j]);
        adv[j] = v.x * gp.x + (space.dimension() == 2 ? v.y * gp.y : 0.0);
      }
      // K_ij = phi_i adv_j; -K^T_ij = -adv_i phi_j
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const double k = phi[i] * adv[j];
          const double kt = adv[i] * phi[j];
          const double d = phi[i] * phi[j] * div;
          blk[i * n + j] += w * (-alpha * kt + (1.0 - alpha) * (k + d));
        }
    }
  });
  if (alpha == 0.0) return volume;
  return add(volume, assemble_boundary_quadratic(space, a, edge_degree), 1.0, alpha);
}

namespace {

std::vector<bool> boundary_rows(const FunctionSpace& space, std::size_t m) {
  std::vector<bool> b(space.num_dofs() * m);
  for (std::size_t d = 0; d < space.num_dofs(); ++d)
    for (std::size_t c = 0; c < m; ++c) b[d * m + c] = space.dofmap().is_boundary_dof(d);
  return b;
}

}  // namespace

GlobalOperators assemble_scalar(const FunctionSpace& space, const VelocityField& a, int volume_degree,
                                int edge_degree, std::optional<double> alpha) {
  GlobalOperators ops;
  ops.alpha = alpha.value_or(a.constant ? 1.0 : 0.5);
  ops.volume_degree = volume_degree;
  ops.edge_degree = edge_degree;
  ops.M = assemble_mass(space, volume_degree);
  ops.Q = assemble_stiffness(space, a, volume_degree, edge_degree, ops.alpha);
  ops.Bq = assemble_boundary_quadratic(space, a, edge_degree);
  ops.boundary = boundary_rows(space, 1);
  return ops;
}

GlobalOperators assemble_system(const FunctionSpace& space, const DenseMatrix& A, const DenseMatrix& B,
                                int volume_degree, int edge_degree, std::optional<double> alpha) {
  const std::size_t m = A.rows();
  if (A.cols() != m || (space.dimension() == 2 && (B.rows() != m || B.cols() != m)))
    throw InvalidArgument("assemble_system: coefficient matrices must be m x m");
  GlobalOperators ops;
  ops.components = m;
  ops.alpha = alpha.value_or(1.0);
  ops.volume_degree = volume_degree;
  ops.edge_degree = edge_degree;
  ops.M = assemble_mass(space, volume_degree);
  const auto ax = VelocityField::uniform({1.0, 0.0});
  ops.Q = kron(assemble_stiffness(space, ax, volume_degree, edge_degree, ops.alpha), A);
  ops.Bq = kron(assemble_boundary_quadratic(space, ax, edge_degree), A);
  if (space.dimension() == 2) {
    const auto ay = VelocityField::uniform({0.0, 1.0});
    ops.Q = add(ops.Q, kron(assemble_stiffness(space, ay, volume_degree, edge_degree, ops.alpha), B));
    ops.Bq = add(ops.Bq, kron(assemble_boundary_quadratic(space, ay, edge_degree), B));
  }
  ops.boundary = boundary_rows(space, m);
  return ops;
}

SparseMatrix block_scale_rows(const SparseMatrix& a, const DenseMatrix& w) {
  const std::size_t m = w.rows();
  if (m == 0 || w.cols() != m || a.rows() % m != 0) throw InvalidArgument("block_scale_rows: size mismatch");
  std::vector<Triplet> out;
  for (const auto& t : a.triplets()) {
    const std::size_t node = t.row / m, c = t.row % m;
    for (std::size_t r = 0; r < m; ++r)
      if (w(r, c) != 0.0) out.push_back({node * m + r, t.col, w(r, c) * t.value});
  }
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(out));
}

SbpReport check_sbp(const GlobalOperators& ops, const DenseMatrix& weight) {
  SbpReport r;
  const bool weighted = !weight.empty() && ops.components > 1;
  const SparseMatrix Q = weighted ? block_scale_rows(ops.Q, weight) : ops.Q;
  const SparseMatrix Bq = weighted ? block_scale_rows(ops.Bq, weight) : ops.Bq;
  const SparseMatrix res = add(add(Q, Q.transpose()), Bq, 1.0, -1.0);
  const auto rp = res.row_ptr();
  const auto vals = res.values();
  for (std::size_t i = 0; i < res.rows(); ++i)
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
      double& target = ops.boundary.empty() || ops.boundary[i] ? r.boundary_residual : r.interior_residual;
      target = std::max(target, std::abs(vals[k]));
    }
  r.q_norm = Q.max_abs();
  r.tolerance = 1e-12 * r.q_norm;
  r.pass = r.interior_residual <= r.tolerance && r.boundary_residual <= r.tolerance;
  return r;
}

}  // namespace sbpcg
