#include "sbpcg/space.hpp"

#include <algorithm>
#include <numeric>

#include "sbpcg/dense.hpp"
#include "sbpcg/error.hpp"
#include "sbpcg/quadrature.hpp"

namespace sbpcg {

DofMap::DofMap(const Mesh& mesh, int order, BasisKind kind) : p_(order), kind_(kind) {
  if (order < 1 || order > 3) throw InvalidArgument("unsupported order " + std::to_string(order) + " (1..3)");
  const Basis basis(kind, order, mesh.dimension());
  nloc_ = basis.size();
  const std::size_t ne = mesh.num_elements();
  const auto p = static_cast<std::size_t>(order);
  dofs_.assign(ne * nloc_, 0);

  if (mesh.dimension() == 1) {
    std::vector<std::size_t> order_by_x(ne);
    std::iota(order_by_x.begin(), order_by_x.end(), 0);
    const auto& v = mesh.vertices();
    const auto& el = mesh.elements();
    std::sort(order_by_x.begin(), order_by_x.end(),
              [&](std::size_t a, std::size_t b) { return v[el[a][0]].x < v[el[b][0]].x; });
    for (std::size_t k = 0; k + 1 < ne; ++k)
      if (el[order_by_x[k]][1] != el[order_by_x[k + 1]][0])
        throw MeshError("1D mesh is not a single connected chain of intervals");
    for (std::size_t k = 0; k < ne; ++k) {
      std::size_t* d = dofs_.data() + order_by_x[k] * nloc_;
      d[0] = k * p;
      d[1] = (k + 1) * p;
      for (std::size_t s = 1; s < p; ++s) d[1 + s] = k * p + s;
    }
    ndofs_ = ne * p + 1;
  } else {
    const std::size_t nv = mesh.num_vertices();
    const std::size_t nedge = mesh.num_edges();
    const std::size_t nint = nloc_ - 3 - 3 * (p - 1);
    for (std::size_t e = 0; e < ne; ++e) {
      std::size_t* d = dofs_.data() + e * nloc_;
      const auto& el = mesh.elements()[e];
      for (std::size_t i = 0; i < 3; ++i) d[i] = el[i];
      for (int f = 0; f < 3; ++f) {
        const std::size_t eid = mesh.edge_of(e, f);
        const bool forward = el[static_cast<std::size_t>(f)] == mesh.edges()[eid][0];
        for (std::size_t s = 1; s < p; ++s) {
          const std::size_t t = forward ? s - 1 : p - 1 - s;
          d[3 + static_cast<std::size_t>(f) * (p - 1) + (s - 1)] = nv + eid * (p - 1) + t;
        }
      }
      for (std::size_t k = 0; k < nint; ++k) d[3 + 3 * (p - 1) + k] = nv + nedge * (p - 1) + e * nint + k;
    }
    ndofs_ = nv + nedge * (p - 1) + ne * nint;
  }

  on_boundary_.assign(ndofs_, false);
  for (const auto& bf : mesh.boundary_faces())
    for (std::size_t i : basis.face_functions(bf.local_face)) on_boundary_[dofs_[bf.element * nloc_ + i]] = true;
  for (std::size_t d = 0; d < ndofs_; ++d)
    if (on_boundary_[d]) boundary_.push_back(d);
}

FunctionSpace::FunctionSpace(std::shared_ptr<const Mesh> mesh, int order, BasisKind kind)
    : mesh_(std::move(mesh)), basis_(kind, order, mesh_->dimension()), dofmap_(*mesh_, order, kind) {
  const std::size_t n = basis_.size();
  const auto nodes = basis_.nodes();
  DenseMatrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto phi = basis_.eval(nodes[i]);
    for (std::size_t j = 0; j < n; ++j) v(i, j) = phi[j];
  }
  const DenseMatrix vi = inverse(v);
  vandermonde_inv_.assign(vi.data().begin(), vi.data().end());
}

ElementGeometry FunctionSpace::geometry(std::size_t e) const {
  const auto& el = mesh_->elements()[e];
  const auto& v = mesh_->vertices();
  ElementGeometry g{};
  g.origin = v[el[0]];
  if (mesh_->dimension() == 1) {
    const double len = v[el[1]].x - v[el[0]].x;
    g.jac[0][0] = len;
    g.jac[1][1] = 1.0;
    g.inv[0][0] = 1.0 / len;
    g.inv[1][1] = 1.0;
    g.det = len;
    return g;
  }
  g.jac[0][0] = v[el[1]].x - v[el[0]].x;
  g.jac[0][1] = v[el[2]].x - v[el[0]].x;
  g.jac[1][0] = v[el[1]].y - v[el[0]].y;
  g.jac[1][1] = v[el[2]].y - v[el[0]].y;
  g.det = g.jac[0][0] * g.jac[1][1] - g.jac[0][1] * g.jac[1][0];
  g.inv[0][0] = g.jac[1][1] / g.det;
  g.inv[0][1] = -g.jac[0][1] / g.det;
  g.inv[1][0] = -g.jac[1][0] / g.det;
  g.inv[1][1] = g.jac[0][0] / g.det;
  return g;
}

std::vector<Point> FunctionSpace::dof_coordinates() const {
  std::vector<Point> x(num_dofs());
  const auto nodes = basis_.nodes();
  for (std::size_t e = 0; e < mesh_->num_elements(); ++e) {
    const auto g = geometry(e);
    const auto d = dofmap_.element_dofs(e);
    for (std::size_t i = 0; i < d.size(); ++i) x[d[i]] = g.map(nodes[i]);
  }
  return x;
}

void FunctionSpace::interpolate_component(const ScalarFunction& f, std::size_t m, std::size_t c,
                                          std::span<double> u) const {
  if (u.size() != num_dofs() * m || c >= m) throw InvalidArgument("interpolate: size mismatch");
  const std::size_t n = basis_.size();
  const auto nodes = basis_.nodes();
  std::vector<double> fv(n);
  for (std::size_t e = 0; e < mesh_->num_elements(); ++e) {
    const auto g = geometry(e);
    for (std::size_t i = 0; i < n; ++i) fv[i] = f(g.map(nodes[i]));
    const auto d = dofmap_.element_dofs(e);
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += vandermonde_inv_[j * n + i] * fv[i];
      u[d[j] * m + c] = s;
    }
  }
}

std::vector<double> FunctionSpace::interpolate(const ScalarFunction& f) const {
  std::vector<double> u(num_dofs());
  interpolate_component(f, 1, 0, u);
  return u;
}

std::vector<double> FunctionSpace::nodal_values(std::span<const double> u, std::size_t m, std::size_t c) const {
  if (u.size() != num_dofs() * m || c >= m) throw InvalidArgument("nodal_values: size mismatch");
  std::vector<double> out(num_dofs());
  if (basis_.kind() == BasisKind::lagrange) {
    for (std::size_t d = 0; d < out.size(); ++d) out[d] = u[d * m + c];
    return out;
  }
  const std::size_t n = basis_.size();
  const auto nodes = basis_.nodes();
  std::vector<std::vector<double>> phi;
  for (const auto& xi : nodes) phi.push_back(basis_.eval(xi));
  for (std::size_t e = 0; e < mesh_->num_elements(); ++e) {
    const auto d = dofmap_.element_dofs(e);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += phi[i][j] * u[d[j] * m + c];
      out[d[i]] = s;
    }
  }
  return out;
}

double FunctionSpace::evaluate(std::span<const double> u, std::size_t e, const Point& xi, std::size_t m,
                               std::size_t c) const {
  const auto phi = basis_.eval(xi);
  const auto d = dofmap_.element_dofs(e);
  double s = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) s += phi[j] * u[d[j] * m + c];
  return s;
}

std::vector<FaceTrace> FunctionSpace::boundary_trace(int edge_degree) const {
  std::vector<FaceTrace> out;
  const Mesh& mesh = *mesh_;
  const bool one_d = mesh.dimension() == 1;
  QuadratureRule rule;
  if (one_d) {
    rule.points = {{0.0, 0.0}};
    rule.weights = {1.0};
  } else {
    rule = quad_rule(Domain::edge, edge_degree);
  }
  static constexpr Point ref[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  std::vector<double> phi(basis_.size());
  for (const auto& bf : mesh.boundary_faces()) {
    FaceTrace t;
    t.element = bf.element;
    t.local_face = bf.local_face;
    t.tag = bf.tag;
    t.normal = mesh.normal(bf.element, bf.local_face);
    const auto local = basis_.face_functions(bf.local_face);
    const auto edofs = dofmap_.element_dofs(bf.element);
    for (std::size_t i : local) t.dofs.push_back(edofs[i]);
    const auto g = geometry(bf.element);
    const double len = mesh.face_measure(bf.element, bf.local_face);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      Point xi;
      if (one_d) {
        xi = {bf.local_face == 0 ? 0.0 : 1.0, 0.0};
      } else {
        const Point& a = ref[bf.local_face];
        const Point& b = ref[(bf.local_face + 1) % 3];
        const double s = rule.points[q].x;
        xi = {a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
      }
      t.points.push_back(g.map(xi));
      t.weights.push_back(rule.weights[q] * len);
      basis_.eval(xi, phi);
      for (std::size_t i : local) t.phi.push_back(phi[i]);
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace sbpcg
