#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sbpcg/assembly.hpp"
#include "sbpcg/basis.hpp"
#include "sbpcg/dense.hpp"
#include "sbpcg/mesh.hpp"
#include "sbpcg/sat.hpp"
#include "sbpcg/space.hpp"
#include "sbpcg/timeint.hpp"

namespace sbpcg {

/// Space-time function f(x, t).
using FieldFunction = std::function<double(const Point& x, double t)>;

enum class BoundaryKind {
  scalar_upwind,   // g = boundary_value on inflow faces
  characteristic,  // W^- = R W^+ + g, per end/tag reflection
  r13,             // accommodation condition L_n U = G_n
};

/// Length scale of the time step rule: the smallest incircle diameter (cell
/// width in 1D), or that divided by the order (lattice node spacing).
enum class StepRule { incircle, node_spacing };
StepRule parse_step_rule(const std::string& s);
std::string to_string(StepRule r);

struct R13Parameters {
  double alpha = 3.0;  // accommodation
  double beta = -0.5;
  double theta0 = 0.0;  // inner cylinder temperature
  double theta1 = 1.0;  // outer cylinder temperature
  double ux = 1.0;      // slip velocity on the inner cylinder
  double uy = 0.0;
  double tau = 0.15;  // relaxation time
  R13Variant variant = R13Variant::delta;
  double delta = -2.0;  // delta variant value, or lambda for eigen_shift
};

/// Everything needed to set up and run one experiment.
struct ProblemSpec {
  std::string name;
  int dimension = 2;
  std::size_t components = 1;

  // scalar problems
  VelocityField velocity;
  std::optional<double> split_alpha;  // default per velocity.constant
  FieldFunction boundary_value;       // inflow data g(x, t); empty = 0
  // systems: u_t + A u_x + B u_y = S u
  DenseMatrix A, B, P, source;

  BoundaryKind boundary = BoundaryKind::scalar_upwind;
  double reflection_left = 0.0;   // wave: R at x = 0
  double reflection_right = 0.0;  // wave: R at x = 1
  R13Parameters r13;

  std::vector<FieldFunction> initial;  // one per component
  FieldFunction exact;                 // component 0, optional

  std::string mesh = "unit_square:16";
  int order = 3;
  BasisKind basis = BasisKind::bernstein;
  int volume_degree = 0;  // 0 = default_quad_degree(order)
  int edge_degree = 0;
  double sat_scale = 1.0;
  Scheme scheme = Scheme::ssprk54;
  double cfl = 0.3;
  StepRule step_rule = StepRule::incircle;
  double t_end = 1.0;
  long max_steps = -1;
  double max_speed = 1.0;  // for the time step rule
  double steady_tol = 0.0;
  double blowup_threshold = 10.0;
  bool sbp_guard = true;  // run() refuses operators that fail check_sbp
};

/// Linear advection of the bump exp(-40 r^2), r < 0.25, centred at
/// (0.25, 0.5) with a = (1, 0) on the unit square. Inflow on the left with
/// g = 0; a.n = 0 on the horizontal walls.
ProblemSpec advection_2d(bool truncated = true);
/// Rigid rotation a = (2 pi y, -2 pi x) on the unit disk, bump at (0, 0.5),
/// split form alpha = 0.5; exact solution is the bump rotated clockwise by
/// 2 pi t. `truncated = false` drops the cut-off at r = 0.25.
ProblemSpec rotation_2d(bool truncated = true);
/// Smooth advection u = sin(2 pi (x - t)) sin(2 pi (y - t/2)) with
/// a = (1, 1/2) on the unit square; exact inflow data.
ProblemSpec sine_advection_2d();
/// Linear profile u = x + 2y - 2t transported by a = (1, 1/2); lies in V^h
/// for every order.
ProblemSpec linear_advection_2d();
/// 1D acoustics u_t + A u_x = 0, A = [[0,1],[1,0]], with characteristic
/// data sin t entering at both ends and reflections R0, R1 (|R| < 1).
ProblemSpec wave_1d(double r0 = 0.0, double r1 = 0.0);
/// Unsteady R13 heat sub-model on the annulus 1/2 <= r <= 1, marched to
/// steady state.
ProblemSpec r13_heat();

ProblemSpec make_problem(const std::string& name, bool truncated_bump = true);
std::vector<std::string> problem_names();

/// Bump exp(-40 r^2) for r < 0.25, else 0 (no cut-off when not truncated).
double bump(double dx, double dy, bool truncated = true);

/// Assembled discretisation of a ProblemSpec on a given mesh.
struct Discretization {
  ProblemSpec spec;
  std::shared_ptr<const Mesh> mesh;
  std::unique_ptr<FunctionSpace> space;
  GlobalOperators ops;
  BoundaryOperator sat;
  SemiDiscrete system;
  DenseMatrix weight;  // energy weight P^{-1}; empty for scalars
  double dt = 0.0;

  std::vector<double> initial_state() const;
  /// (max, min) of component 0 over the lattice nodes.
  std::pair<double, double> extrema(std::span<const double> u) const;
};

/// dt = cfl * h / max_speed, h = smallest incircle diameter (2D) or cell
/// width (1D), divided by the order for StepRule::node_spacing.
double time_step(const Mesh& mesh, double cfl, double max_speed, StepRule rule = StepRule::incircle, int order = 1);

std::unique_ptr<Discretization> discretize(const ProblemSpec& spec, std::shared_ptr<const Mesh> mesh);
std::unique_ptr<Discretization> discretize(const ProblemSpec& spec);

IntegratorConfig integrator_config(const Discretization& d, MassSolverKind solver = MassSolverKind::cg);
/// Throws InvalidArgument when the operators fail check_sbp and the spec
/// keeps its guard on.
Trajectory run(const Discretization& d, const IntegratorConfig& cfg);

struct ErrorNorms {
  double l1 = 0.0;
  double l2_m = 0.0;
  double linf = 0.0;
};

/// L2_M = sqrt((u - I e)^T M (u - I e)) with I e the interpolant of the
/// exact solution; L1 by volume quadrature of |u_h - e|; Linf over the
/// lattice nodes.
ErrorNorms error_norms(const FunctionSpace& space, const SparseMatrix& M, std::span<const double> u,
                       const ScalarFunction& exact);

}  // namespace sbpcg
