#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <map>

#include "commands.hpp"
#include "config.hpp"
#include "sbpcg/error.hpp"

namespace {

using sbpcg::cli::RunConfig;

const std::map<std::string, std::string>& help_text() {
  static const std::map<std::string, std::string> h = {
      {"problem", "advection2d | rotation2d | sine2d | linear2d | wave1d | r13"},
      {"mesh", "generator spec (unit_square:N, unit_disk:N, annulus:r0:r1:N, interval:N[:random:seed]) or mesh file"},
      {"cells", "resolution N passed to the mesh generator"},
      {"seed", "seed for --random-mesh"},
      {"order", "polynomial order p (1-3)"},
      {"basis", "lagrange | bernstein"},
      {"volume_quad", "volume quadrature degree"},
      {"edge_quad", "edge quadrature degree"},
      {"split_alpha", "split-form parameter alpha (1 conservative, 0.5 split, 0 advective)"},
      {"sat_scale", "multiplier on the SAT penalty"},
      {"scheme", "ssprk22 | ssprk33 | ssprk54"},
      {"cfl", "CFL number"},
      {"step_rule", "incircle | node (length scale of the time step rule)"},
      {"t_end", "final time"},
      {"max_steps", "stop after this many steps (<= 0: no cap)"},
      {"blowup", "abort when max |u| exceeds this value"},
      {"mass_solver", "cg | cholesky"},
      {"output", "output directory"},
      {"format", "auto | vtk | csv"},
      {"r0", "wave: reflection coefficient at x = 0"},
      {"r1", "wave: reflection coefficient at x = 1"},
      {"delta", "R13: boundary penalty parameter (negative)"},
      {"levels", "convergence: number of meshes"},
      {"eigs", "spectrum: eigenvalues per column"},
  };
  return h;
}

struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  bool random_mesh = false, smooth_bump = false, no_guard = false;
  CLI::Option *random_opt = nullptr, *smooth_opt = nullptr, *guard_opt = nullptr;
};

void add_run_options(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config_path, "key = value config file; flags win over the file");
  for (const auto& [key, help] : help_text()) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    o.options[key] = app->add_option(flag, o.values[key], help);
  }
  o.random_opt = app->add_flag("--random-mesh", o.random_mesh, "perturbed 1D mesh (uses --seed)");
  o.smooth_opt = app->add_flag("--smooth-bump", o.smooth_bump, "drop the bump cut-off at r = 0.25");
  o.guard_opt = app->add_flag("--no-sbp-guard", o.no_guard, "run even when the SBP check fails");
}

RunConfig resolve(const Overrides& o) {
  RunConfig c;
  if (!o.config_path.empty()) c = sbpcg::cli::load_config(o.config_path, c);
  for (const auto& [key, opt] : o.options)
    if (opt->count() > 0) sbpcg::cli::set_value(c, key, o.values.at(key));
  if (o.random_opt->count() > 0) c.random_mesh = o.random_mesh;
  if (o.smooth_opt->count() > 0) c.smooth_bump = o.smooth_bump;
  if (o.guard_opt->count() > 0) c.sbp_guard = !o.no_guard;
  // Explicitly degraded edge quadrature is the mismatch experiment.
  if (o.options.at("edge_quad")->count() > 0 && o.guard_opt->count() == 0) c.sbp_guard = false;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SBP-SAT continuous Galerkin solver for linear hyperbolic problems"};
  app.require_subcommand(1);

  Overrides solve_o, spec_o, conv_o, mesh_o, dump_o;
  auto* solve = app.add_subcommand("solve", "run a time-dependent simulation");
  add_run_options(solve, solve_o);
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the stability matrices");
  add_run_options(spectrum, spec_o);
  auto* convergence = app.add_subcommand("convergence", "mesh-refinement study against the exact solution");
  add_run_options(convergence, conv_o);
  auto* meshgen = app.add_subcommand("mesh-gen", "write a generated mesh to a file");
  add_run_options(meshgen, mesh_o);
  std::string mesh_file = "mesh.txt";
  meshgen->add_option("--file", mesh_file, "mesh file to write");
  auto* dump = app.add_subcommand("dump-operators", "write M, Q, Bq, Pi and L in Matrix Market format");
  add_run_options(dump, dump_o);
  auto* show = app.add_subcommand("show-config", "print the resolved configuration");
  Overrides show_o;
  add_run_options(show, show_o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return sbpcg::cli::cmd_solve(resolve(solve_o), std::cout);
    if (*spectrum) return sbpcg::cli::cmd_spectrum(resolve(spec_o), std::cout);
    if (*convergence) return sbpcg::cli::cmd_convergence(resolve(conv_o), std::cout);
    if (*meshgen) return sbpcg::cli::cmd_mesh_gen(resolve(mesh_o), mesh_file, std::cout);
    if (*dump) return sbpcg::cli::cmd_dump_operators(resolve(dump_o), std::cout);
    if (*show) {
      sbpcg::cli::write_config(std::cout, resolve(show_o));
      return 0;
    }
  } catch (const sbpcg::BlowUpError& e) {
    std::cerr << "error: " << e.what() << " (last good step " << e.last_good_step() << ")\n";
    return sbpcg::cli::exit_blowup;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return sbpcg::cli::exit_error;
  }
  return sbpcg::cli::exit_error;
}
