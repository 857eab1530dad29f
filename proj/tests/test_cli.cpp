#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "output.hpp"
#include "sbpcg/error.hpp"

using namespace sbpcg;
using namespace sbpcg::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sbpcg_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config text round trip") {
  RunConfig c;
  c.problem = "wave1d";
  c.cells = 40;
  c.random_mesh = true;
  c.seed = 11;
  c.order = 2;
  c.basis = BasisKind::lagrange;
  c.edge_quad = 5;
  c.split_alpha = 0.5;
  c.cfl = 0.1;
  c.t_end = 1.0 / 3.0;
  c.scheme = Scheme::ssprk33;
  c.r0 = 0.25;
  c.delta = -2.0;
  c.sbp_guard = false;
  std::istringstream is(to_text(c));
  CHECK(parse_config(is) == c);
  std::istringstream d(to_text(RunConfig{}));
  CHECK(parse_config(d) == RunConfig{});
}

TEST_CASE("config parsing") {
  std::istringstream ok("# comment\n\nedge-quad = 5   # trailing\n  cfl=0.01\n");
  const auto c = parse_config(ok);
  CHECK(c.edge_quad == 5);
  CHECK(c.cfl == 0.01);

  std::istringstream bad("problem = advection2d\ncfl = fast\n");
  try {
    parse_config(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream nokey("order 3\n");
  CHECK_THROWS_AS(parse_config(nokey), ParseError);
  RunConfig r;
  CHECK_THROWS_AS(set_value(r, "colour", "red"), InvalidArgument);
  CHECK_THROWS_AS(set_value(r, "order", "4"), InvalidArgument);
  CHECK_THROWS_AS(set_value(r, "problem", "burgers"), InvalidArgument);
  CHECK_THROWS_AS(set_value(r, "cfl", "-1"), InvalidArgument);
}

TEST_CASE("mesh recipes") {
  RunConfig c;
  c.problem = "wave1d";
  const auto wave = build_spec(c);
  CHECK(mesh_recipe(c, wave) == wave.mesh);
  c.cells = 50;
  CHECK(mesh_recipe(c, wave) == "interval:50");
  c.random_mesh = true;
  c.seed = 3;
  CHECK(mesh_recipe(c, wave) == "interval:50:random:3");

  RunConfig r;
  r.problem = "r13";
  r.cells = 3;
  CHECK(mesh_recipe(r, build_spec(RunConfig{.problem = "r13"})) == "annulus:0.5:1:3");
  r.random_mesh = true;
  CHECK_THROWS_AS(mesh_recipe(r, build_spec(RunConfig{.problem = "r13"})), InvalidArgument);
}

TEST_CASE("overrides reach the problem spec") {
  RunConfig c;
  c.order = 2;
  c.cfl = 0.05;
  c.edge_quad = 5;
  c.smooth_bump = true;
  c.sbp_guard = false;
  const auto s = build_spec(c);
  CHECK(s.order == 2);
  CHECK(s.cfl == 0.05);
  CHECK(s.edge_degree == 5);
  CHECK_FALSE(s.sbp_guard);
  CHECK(s.initial[0]({0.25, 0.8}, 0.0) > 0.0);  // no cut-off
}

TEST_CASE("fitted slope") {
  const std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
  std::vector<double> e;
  for (double x : h) e.push_back(3.0 * std::pow(x, 2.5));
  CHECK(fitted_slope(h, e) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("VTK output") {
  auto mesh = std::make_shared<const Mesh>(unit_square(1));
  const FunctionSpace V(mesh, 2, BasisKind::lagrange);
  const std::vector<double> u(V.num_dofs(), 1.0);
  std::ostringstream os;
  write_vtk(os, V, u, 1, "test");
  const std::string s = os.str();
  CHECK(s.rfind("# vtk DataFile Version", 0) == 0);
  CHECK(s.find("CELLS 8 32") != std::string::npos);  // 2 elements x p^2 sub-triangles
  CHECK(s.find("SCALARS u1 double") != std::string::npos);
}

TEST_CASE("solve writes deterministic outputs") {
  RunConfig c;
  c.problem = "wave1d";
  c.cells = 20;
  c.t_end = 0.5;
  c.random_mesh = true;
  const auto a = scratch("det_a"), b = scratch("det_b");
  std::ostringstream log;
  c.output = a.string();
  CHECK(cmd_solve(c, log) == exit_ok);
  c.output = b.string();
  CHECK(cmd_solve(c, log) == exit_ok);
  for (const char* f : {"solution_final.csv", "energy.csv", "summary.txt"}) {
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  CHECK(slurp(a / "energy.csv").rfind("step,t,energy,umax,umin\n", 0) == 0);
  CHECK(slurp(a / "summary.txt").find("status = stable") != std::string::npos);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("solve reports blow-up through the exit code") {
  RunConfig c;
  c.mesh = "unit_square:8";
  c.edge_quad = 5;
  c.sbp_guard = false;
  c.t_end = 3.0;
  c.max_steps = 0;
  c.mass_solver = MassSolverKind::cholesky;
  c.output = scratch("blowup").string();
  std::ostringstream log;
  CHECK(cmd_solve(c, log) == exit_blowup);
  CHECK(slurp(fs::path(c.output) / "summary.txt").find("status = aborted") != std::string::npos);
  fs::remove_all(c.output);
}

TEST_CASE("spectrum and convergence commands") {
  RunConfig c;
  c.mesh = "unit_square:3";
  c.order = 1;
  c.eigs = 4;
  c.output = scratch("spec").string();
  std::ostringstream log;
  CHECK(cmd_spectrum(c, log) == exit_ok);
  CHECK(fs::exists(fs::path(c.output) / "spectrum.csv"));
  CHECK(log.str().find("verdict: stable") != std::string::npos);
  fs::remove_all(c.output);

  RunConfig v;
  v.problem = "linear2d";
  v.cells = 2;
  v.levels = 3;
  v.t_end = 0.02;
  v.output = scratch("conv").string();
  std::ostringstream vlog;
  CHECK(cmd_convergence(v, vlog) == exit_ok);
  const auto csv = slurp(fs::path(v.output) / "convergence.csv");
  CHECK(csv.rfind("level,h,dofs,l1,l2_m,linf\n", 0) == 0);
  fs::remove_all(v.output);
  v.levels = 2;
  CHECK_THROWS_AS(cmd_convergence(v, vlog), InvalidArgument);
}

TEST_CASE("mesh-gen and dump-operators") {
  const auto dir = scratch("mesh");
  fs::create_directories(dir);
  RunConfig c;
  c.mesh = "annulus:0.5:1:2";
  std::ostringstream log;
  CHECK(cmd_mesh_gen(c, (dir / "m.txt").string(), log) == exit_ok);
  CHECK(same_mesh(load_mesh((dir / "m.txt").string()), generate_mesh("annulus:0.5:1:2")));

  RunConfig d;
  d.problem = "wave1d";
  d.cells = 4;
  d.output = (dir / "ops").string();
  CHECK(cmd_dump_operators(d, log) == exit_ok);
  for (const char* f : {"M.mtx", "Q.mtx", "Bq.mtx", "Pi.mtx", "L.mtx"}) CHECK(fs::exists(dir / "ops" / f));
  fs::remove_all(dir);
}
