#include "sbpcg/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sbpcg/error.hpp"
#include "sbpcg/quadrature.hpp"

namespace sbpcg {

namespace {

constexpr double pi = std::numbers::pi;

FieldFunction constant_field(double v) {
  return [v](const Point&, double) { return v; };
}

}  // namespace

double bump(double dx, double dy, bool truncated) {
  const double r2 = dx * dx + dy * dy;
  return (!truncated || r2 < 0.0625) ? std::exp(-40.0 * r2) : 0.0;
}

ProblemSpec advection_2d(bool truncated) {
  ProblemSpec s;
  s.name = "advection2d";
  s.velocity = VelocityField::uniform({1.0, 0.0});
  s.initial = {[truncated](const Point& x, double) { return bump(x.x - 0.25, x.y - 0.5, truncated); }};
  s.exact = [truncated](const Point& x, double t) { return bump(x.x - 0.25 - t, x.y - 0.5, truncated); };
  s.mesh = "unit_square:22";
  s.order = 3;
  s.basis = BasisKind::bernstein;
  s.scheme = Scheme::ssprk54;
  s.cfl = 0.3;
  s.t_end = 10.0;
  s.max_steps = 173;
  s.max_speed = 1.0;
  s.blowup_threshold = 2.0;
  return s;
}

ProblemSpec rotation_2d(bool truncated) {
  ProblemSpec s;
  s.name = "rotation2d";
  s.velocity.value = [](const Point& x) { return Point{2.0 * pi * x.y, -2.0 * pi * x.x}; };
  s.velocity.divergence = [](const Point&) { return 0.0; };
  s.velocity.constant = false;
  s.split_alpha = 0.5;
  s.initial = {[truncated](const Point& x, double) { return bump(x.x, x.y - 0.5, truncated); }};
  s.exact = [truncated](const Point& x, double t) {
    // Trace the point back along the clockwise rotation.
    const double c = std::cos(2.0 * pi * t), sn = std::sin(2.0 * pi * t);
    return bump(c * x.x - sn * x.y, sn * x.x + c * x.y - 0.5, truncated);
  };
  s.mesh = "unit_disk:13";
  s.order = 3;
  s.basis = BasisKind::bernstein;
  s.scheme = Scheme::ssprk54;
  s.cfl = 0.2;
  s.t_end = 2.0;
  s.max_speed = 2.0 * pi;
  s.blowup_threshold = 2.0;
  return s;
}

ProblemSpec sine_advection_2d() {
  ProblemSpec s;
  s.name = "sine2d";
  s.velocity = VelocityField::uniform({1.0, 0.5});
  s.exact = [](const Point& x, double t) {
    return std::sin(2.0 * pi * (x.x - t)) * std::sin(2.0 * pi * (x.y - 0.5 * t));
  };
  s.initial = {s.exact};
  s.boundary_value = s.exact;
  s.mesh = "unit_square:8";
  s.order = 2;
  s.basis = BasisKind::lagrange;
  s.scheme = Scheme::ssprk54;
  s.cfl = 0.1;
  s.t_end = 0.25;
  s.max_speed = std::sqrt(1.25);
  return s;
}

ProblemSpec linear_advection_2d() {
  ProblemSpec s = sine_advection_2d();
  s.name = "linear2d";
  s.exact = [](const Point& x, double t) { return x.x + 2.0 * x.y - 2.0 * t; };
  s.initial = {s.exact};
  s.boundary_value = s.exact;
  s.order = 1;
  return s;
}

ProblemSpec wave_1d(double r0, double r1) {
  if (!(std::abs(r0) < 1.0) || !(std::abs(r1) < 1.0))
    throw InvalidArgument("wave_1d: reflection coefficients must satisfy |R| < 1");
  ProblemSpec s;
  s.name = "wave1d";
  s.dimension = 1;
  s.components = 2;
  s.A = DenseMatrix{{0.0, 1.0}, {1.0, 0.0}};
  s.B = DenseMatrix(2, 2);
  s.P = DenseMatrix::identity(2);
  s.boundary = BoundaryKind::characteristic;
  s.reflection_left = r0;
  s.reflection_right = r1;
  s.initial = {constant_field(0.0), constant_field(0.0)};
  // Incoming characteristic at either end: W^- = R W^+ + sin t.
  s.boundary_value = [](const Point&, double t) { return std::sin(t); };
  s.mesh = "interval:100";
  s.order = 2;
  s.basis = BasisKind::lagrange;
  s.scheme = Scheme::ssprk33;
  s.cfl = 0.1;
  s.t_end = 50.0;
  s.max_speed = 1.0;
  return s;
}

ProblemSpec r13_heat() {
  ProblemSpec s;
  s.name = "r13";
  s.components = 6;
  s.A = r13_matrix(0.0);
  s.B = r13_matrix(0.5 * pi);
  s.P = r13_symmetrizer();
  s.boundary = BoundaryKind::r13;
  s.source = DenseMatrix(6, 6);
  for (std::size_t i = 1; i < 6; ++i) s.source(i, i) = -1.0 / s.r13.tau;
  s.initial.assign(6, constant_field(0.0));
  s.mesh = "annulus:0.5:1:5";
  s.order = 2;
  s.basis = BasisKind::lagrange;
  s.scheme = Scheme::ssprk33;
  s.cfl = 0.1;
  s.t_end = 200.0;
  s.max_speed = std::sqrt(2.0);
  s.steady_tol = 1e-8;
  s.blowup_threshold = 1e3;
  return s;
}

std::vector<std::string> problem_names() { return {"advection2d", "rotation2d", "sine2d", "linear2d", "wave1d", "r13"}; }

ProblemSpec make_problem(const std::string& name, bool truncated_bump) {
  if (name == "advection2d") return advection_2d(truncated_bump);
  if (name == "rotation2d") return rotation_2d(truncated_bump);
  if (name == "sine2d") return sine_advection_2d();
  if (name == "linear2d") return linear_advection_2d();
  if (name == "wave1d") return wave_1d();
  if (name == "r13") return r13_heat();
  throw InvalidArgument("unknown problem '" + name + "'");
}

StepRule parse_step_rule(const std::string& s) {
  if (s == "incircle") return StepRule::incircle;
  if (s == "node" || s == "node_spacing") return StepRule::node_spacing;
  throw InvalidArgument("unknown step rule '" + s + "' (expected incircle or node)");
}

std::string to_string(StepRule r) { return r == StepRule::incircle ? "incircle" : "node"; }

double time_step(const Mesh& mesh, double cfl, double max_speed, StepRule rule, int order) {
  if (!(cfl > 0.0)) throw InvalidArgument("cfl must be positive");
  if (!(max_speed > 0.0)) throw InvalidArgument("max wave speed must be positive");
  if (order < 1) throw InvalidArgument("order must be positive");
  const double h = mesh.min_element_size() / (rule == StepRule::node_spacing ? order : 1);
  return cfl * h / max_speed;
}

std::vector<double> Discretization::initial_state() const {
  const std::size_t m = spec.components;
  if (spec.initial.size() != m) throw InvalidArgument("initial data must have one function per component");
  std::vector<double> u(space->num_dofs() * m, 0.0);
  for (std::size_t c = 0; c < m; ++c) {
    const auto& f = spec.initial[c];
    space->interpolate_component([&f](const Point& x) { return f(x, 0.0); }, m, c, u);
  }
  return u;
}

std::pair<double, double> Discretization::extrema(std::span<const double> u) const {
  const auto v = space->nodal_values(u, spec.components, 0);
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {*hi, *lo};
}

std::unique_ptr<Discretization> discretize(const ProblemSpec& spec) {
  return discretize(spec, std::make_shared<const Mesh>(generate_mesh(spec.mesh)));
}

std::unique_ptr<Discretization> discretize(const ProblemSpec& spec, std::shared_ptr<const Mesh> mesh) {
  if (mesh->dimension() != spec.dimension) throw InvalidArgument("mesh dimension does not match the problem");
  auto d = std::make_unique<Discretization>();
  d->spec = spec;
  d->mesh = mesh;
  d->space = std::make_unique<FunctionSpace>(mesh, spec.order, spec.basis);
  const FunctionSpace& V = *d->space;
  const int vdeg = spec.volume_degree > 0 ? spec.volume_degree : default_quad_degree(spec.order);
  const int edeg = spec.edge_degree > 0 ? spec.edge_degree : vdeg;
  const std::size_t m = spec.components;

  if (m == 1) {
    d->ops = assemble_scalar(V, spec.velocity, vdeg, edeg, spec.split_alpha);
    BoundaryData g;
    if (spec.boundary_value) {
      const FieldFunction f = spec.boundary_value;
      g = [f](const Point& x, const Point&, const std::string&, double t) { return std::vector<double>{f(x, t)}; };
    }
    d->sat = scalar_sat_2d(V, spec.velocity, g, edeg, spec.sat_scale);
  } else {
    d->ops = assemble_system(V, spec.A, spec.B, vdeg, edeg, spec.split_alpha);
    d->weight = inverse(spec.P);
    if (spec.boundary == BoundaryKind::characteristic) {
      const double r0 = spec.reflection_left, r1 = spec.reflection_right;
      ReflectionFn refl = [r0, r1](const Point&, const Point&, const std::string& tag) {
        return DenseMatrix{{tag == "left" ? r0 : r1}};
      };
      BoundaryData g;
      if (spec.boundary_value) {
        const FieldFunction f = spec.boundary_value;
        g = [f](const Point& x, const Point&, const std::string&, double t) { return std::vector<double>{f(x, t)}; };
      }
      d->sat = system_sat(V, spec.A, spec.B, spec.P, refl, g, edeg, spec.sat_scale);
    } else if (spec.boundary == BoundaryKind::r13) {
      const R13Parameters p = spec.r13;
      const double scale = spec.sat_scale;
      PointwiseRule rule = [p, scale](const Point&, const Point& n, const std::string&) {
        auto s = build_pi_r13(p.alpha, p.beta, std::atan2(n.y, n.x), p.variant, p.delta);
        s.state = scale * s.state;
        s.data = scale * s.data;
        return s;
      };
      BoundaryData g = [p](const Point&, const Point& n, const std::string& tag, double) {
        if (tag == "inner") return std::vector<double>{-p.alpha * p.theta0, -p.ux * n.y + p.uy * n.x};
        return std::vector<double>{-p.alpha * p.theta1, 0.0};
      };
      d->sat = BoundaryOperator(V, m, rule, g, edeg, false);
    } else {
      throw InvalidArgument("scalar upwind boundary treatment needs a scalar problem");
    }
  }

  SparseMatrix L = add(d->sat.matrix(), d->ops.Q, 1.0, -1.0);
  if (!spec.source.empty()) L = add(L, kron(d->ops.M, spec.source));
  d->system.L = std::move(L);
  d->system.M = d->ops.M;
  d->system.m = m;
  d->system.boundary = &d->sat;
  d->system.energy_weight = d->weight;
  d->dt = time_step(*mesh, spec.cfl, spec.max_speed, spec.step_rule, spec.order);
  return d;
}

IntegratorConfig integrator_config(const Discretization& d, MassSolverKind solver) {
  IntegratorConfig c;
  c.scheme = d.spec.scheme;
  c.dt = d.dt;
  c.t_end = d.spec.t_end;
  c.max_steps = d.spec.max_steps;
  c.mass_solver = solver;
  c.blowup_threshold = d.spec.blowup_threshold;
  c.steady_tol = d.spec.steady_tol;
  c.record_every = d.spec.steady_tol > 0.0 ? 20 : 1;
  return c;
}

Trajectory run(const Discretization& d, const IntegratorConfig& cfg) {
  if (d.spec.sbp_guard) {
    const auto r = check_sbp(d.ops, d.weight);
    if (!r.pass)
      throw InvalidArgument("operators fail the SBP check (residual " +
                            std::to_string(std::max(r.interior_residual, r.boundary_residual)) +
                            "); disable the guard to run anyway");
  }
  Integrator integ(d.system, cfg);
  return integ.run(d.initial_state(), [&d](std::span<const double> u) { return d.extrema(u); });
}

ErrorNorms error_norms(const FunctionSpace& space, const SparseMatrix& M, std::span<const double> u,
                       const ScalarFunction& exact) {
  if (!exact) throw InvalidArgument("error_norms: no exact solution");
  if (u.size() != space.num_dofs()) throw InvalidArgument("error_norms: state has the wrong size");
  ErrorNorms out;

  const auto ie = space.interpolate(exact);
  std::vector<double> diff(u.size()), mdiff(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) diff[i] = u[i] - ie[i];
  M.multiply(diff, mdiff);
  double e2 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) e2 += diff[i] * mdiff[i];
  out.l2_m = std::sqrt(std::max(e2, 0.0));

  const auto nodes = space.dof_coordinates();
  const auto vals = space.nodal_values(u);
  for (std::size_t i = 0; i < nodes.size(); ++i) out.linf = std::max(out.linf, std::abs(vals[i] - exact(nodes[i])));

  const Mesh& mesh = space.mesh();
  const auto rule = quad_rule(mesh.dimension() == 1 ? Domain::interval : Domain::triangle,
                              default_quad_degree(space.order()));
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const auto g = space.geometry(e);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double uh = space.evaluate(u, e, rule.points[q]);
      out.l1 += rule.weights[q] * std::abs(g.det) * std::abs(uh - exact(g.map(rule.points[q])));
    }
  }
  return out;
}

}  // namespace sbpcg
