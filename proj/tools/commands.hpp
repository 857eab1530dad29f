#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"

namespace sbpcg::cli {

/// Exit codes.
constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_blowup = 2;

/// Writes solution_final.(vtk|csv), energy.csv and summary.txt into
/// c.output. Returns exit_blowup when the run aborted.
int cmd_solve(const RunConfig& c, std::ostream& log);
/// spectrum.csv with the four eigenvalue columns; prints the verdict.
int cmd_spectrum(const RunConfig& c, std::ostream& log);
/// convergence.csv over c.levels meshes, doubling the resolution each time.
int cmd_convergence(const RunConfig& c, std::ostream& log);
/// Writes the problem's mesh (or c.mesh) to `path`.
int cmd_mesh_gen(const RunConfig& c, const std::string& path, std::ostream& log);
/// M, Q, Bq, Pi and L in Matrix Market format.
int cmd_dump_operators(const RunConfig& c, std::ostream& log);

}  // namespace sbpcg::cli
