#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "output.hpp"
#include "sbpcg/error.hpp"
#include "sbpcg/spectra.hpp"

namespace sbpcg::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw InvalidArgument("cannot write '" + p.string() + "'");
  return f;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::unique_ptr<Discretization> setup(const RunConfig& c, std::ostream& log) {
  const ProblemSpec spec = build_spec(c);
  auto d = discretize(spec, build_mesh(spec.mesh));
  const auto sbp = check_sbp(d->ops, d->weight);
  if (!sbp.pass)
    log << "warning: SBP residual " << num(std::max(sbp.interior_residual, sbp.boundary_residual))
        << " exceeds tolerance " << num(sbp.tolerance) << '\n';
  return d;
}

}  // namespace

int cmd_solve(const RunConfig& c, std::ostream& log) {
  auto d = setup(c, log);
  const ProblemSpec& s = d->spec;
  fs::create_directories(c.output);
  const auto t0 = std::chrono::steady_clock::now();
  const auto tr = run(*d, integrator_config(*d, c.mass_solver));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::size_t m = s.components;
  const bool csv = c.format == "csv" || (c.format == "auto" && s.dimension == 1);
  {
    auto f = open_out(fs::path(c.output) / (csv ? "solution_final.csv" : "solution_final.vtk"));
    if (csv)
      write_csv_1d(f, *d->space, tr.state, m);
    else
      write_vtk(f, *d->space, tr.state, m, s.name + " t=" + num(tr.t));
  }
  {
    auto f = open_out(fs::path(c.output) / "energy.csv");
    write_energy_csv(f, tr.history);
  }
  const auto [hi, lo] = d->extrema(tr.state);
  {
    auto f = open_out(fs::path(c.output) / "summary.txt");
    f << "problem = " << s.name << '\n'
      << "mesh = " << s.mesh << '\n'
      << "elements = " << d->mesh->num_elements() << '\n'
      << "dofs = " << d->space->num_dofs() << '\n'
      << "components = " << m << '\n'
      << "order = " << s.order << '\n'
      << "basis = " << to_string(s.basis) << '\n'
      << "scheme = " << to_string(s.scheme) << '\n'
      << "cfl = " << num(s.cfl) << '\n'
      << "dt = " << num(d->dt) << '\n'
      << "steps = " << tr.steps << '\n'
      << "t_final = " << num(tr.t) << '\n'
      << "max = " << num(hi) << '\n'
      << "min = " << num(lo) << '\n'
      << "run_max = " << num(tr.max_value) << '\n'
      << "run_min = " << num(tr.min_value) << '\n'
      << "energy_initial = " << num(tr.history.front().energy) << '\n'
      << "energy_final = " << num(tr.history.back().energy) << '\n';
    if (s.steady_tol > 0.0)
      f << "steady = " << (tr.steady ? "true" : "false") << '\n' << "residual = " << num(tr.final_residual) << '\n';
    if (s.exact && m == 1 && !tr.aborted) {
      const double t = tr.t;
      const auto e = error_norms(*d->space, d->ops.M, tr.state,
                                 [&s, t](const Point& x) { return s.exact(x, t); });
      f << "error_l1 = " << num(e.l1) << '\n' << "error_l2_m = " << num(e.l2_m) << '\n'
        << "error_linf = " << num(e.linf) << '\n';
    }
    f << "status = " << (tr.aborted ? "aborted" : "stable") << '\n';
    if (tr.aborted) f << "diagnostic = " << tr.diagnostic << '\n' << "last_good_step = " << tr.last_good_step << '\n';
  }
  log << s.name << ": " << tr.steps << " steps to t=" << num(tr.t) << ", max " << num(hi) << ", min " << num(lo)
      << " (" << num(secs) << " s)\n";
  if (tr.aborted) {
    log << "error: " << tr.diagnostic << " (last good step " << tr.last_good_step << ")\n";
    return exit_blowup;
  }
  return exit_ok;
}

int cmd_spectrum(const RunConfig& c, std::ostream& log) {
  auto d = setup(c, log);
  const auto r = spectrum_report(d->ops, d->sat, static_cast<std::size_t>(c.eigs), d->weight);
  fs::create_directories(c.output);
  auto f = open_out(fs::path(c.output) / "spectrum.csv");
  write_spectrum_csv(f, r);
  log << "dofs " << r.dofs << ", lambda_max(SAT) " << num(r.lambda_max_sat) << ", tolerance " << num(r.tolerance)
      << ", pairing defect " << num(r.pairing_defect) << '\n'
      << "verdict: " << (r.stable ? "stable" : "unstable") << '\n';
  return exit_ok;
}

int cmd_convergence(const RunConfig& c, std::ostream& log) {
  if (c.levels < 3) throw InvalidArgument("convergence needs at least 3 levels");
  const ProblemSpec base = build_spec(c);
  if (!base.exact || base.components != 1) throw InvalidArgument("problem '" + c.problem + "' has no exact solution");
  const int n0 = c.cells.value_or(4);

  std::vector<double> hs, l1, l2, linf;
  fs::create_directories(c.output);
  auto f = open_out(fs::path(c.output) / "convergence.csv");
  f << "level,h,dofs,l1,l2_m,linf\n";
  for (int k = 0; k < c.levels; ++k) {
    RunConfig lc = c;
    lc.cells = n0 << k;
    const ProblemSpec s = build_spec(lc);
    auto d = discretize(s, build_mesh(s.mesh));
    const auto tr = run(*d, integrator_config(*d, c.mass_solver));
    if (tr.aborted) throw BlowUpError(tr.diagnostic, tr.last_good_step);
    const double t = tr.t;
    const auto e =
        error_norms(*d->space, d->ops.M, tr.state, [&s, t](const Point& x) { return s.exact(x, t); });
    const double h = d->mesh->max_element_size();
    hs.push_back(h);
    l1.push_back(e.l1);
    l2.push_back(e.l2_m);
    linf.push_back(e.linf);
    f << k << ',' << num(h) << ',' << d->space->num_dofs() << ',' << num(e.l1) << ',' << num(e.l2_m) << ','
      << num(e.linf) << '\n';
    log << "level " << k << ": h " << num(h) << ", L1 " << num(e.l1) << ", L2_M " << num(e.l2_m) << '\n';
  }
  auto slope = [&hs](const std::vector<double>& e) {
    for (double v : e)
      if (!(v > 0.0)) return std::nan("");
    return fitted_slope(hs, e);
  };
  const std::size_t n = hs.size();
  log << "fitted slopes: L1 " << num(slope(l1)) << ", L2_M " << num(slope(l2)) << ", Linf " << num(slope(linf))
      << '\n'
      << "finest ratio L2_M: " << num(l2[n - 2] / l2[n - 1]) << '\n';
  return exit_ok;
}

int cmd_mesh_gen(const RunConfig& c, const std::string& path, std::ostream& log) {
  const ProblemSpec s = build_spec(c);
  const auto mesh = build_mesh(s.mesh);
  save_mesh(path, *mesh);
  log << "wrote " << path << ": " << mesh->num_vertices() << " vertices, " << mesh->num_elements() << " elements\n";
  return exit_ok;
}

int cmd_dump_operators(const RunConfig& c, std::ostream& log) {
  auto d = setup(c, log);
  fs::create_directories(c.output);
  const std::pair<const char*, const SparseMatrix*> mats[] = {
      {"M.mtx", &d->ops.M}, {"Q.mtx", &d->ops.Q}, {"Bq.mtx", &d->ops.Bq}, {"Pi.mtx", &d->sat.matrix()},
      {"L.mtx", &d->system.L}};
  for (const auto& [name, a] : mats) {
    auto f = open_out(fs::path(c.output) / name);
    write_matrix_market(f, *a);
    log << name << ": " << a->rows() << " x " << a->cols() << ", " << a->nnz() << " nonzeros\n";
  }
  return exit_ok;
}

}  // namespace sbpcg::cli
