#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sbpcg/space.hpp"
#include "sbpcg/timeint.hpp"

namespace sbpcg::cli {

/// VTK legacy ASCII: every element is split into p^2 sub-triangles over its
/// lattice nodes; one POINT_DATA scalar per component (nodal values).
void write_vtk(std::ostream& os, const FunctionSpace& space, std::span<const double> u, std::size_t m,
               const std::string& title);

/// 1D: `x,u1,...,um` at the lattice nodes, left to right.
void write_csv_1d(std::ostream& os, const FunctionSpace& space, std::span<const double> u, std::size_t m);

/// `step,t,energy,umax,umin`
void write_energy_csv(std::ostream& os, const std::vector<Sample>& history);

/// Least-squares slope of log(y) against log(x).
double fitted_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sbpcg::cli
