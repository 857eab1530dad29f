#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "sbpcg/error.hpp"

namespace sbpcg::cli {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_vtk(std::ostream& os, const FunctionSpace& space, std::span<const double> u, std::size_t m,
               const std::string& title) {
  if (space.dimension() != 2) throw InvalidArgument("VTK output is for 2D meshes");
  if (u.size() != space.num_dofs() * m) throw InvalidArgument("write_vtk: state has the wrong size");
  const auto pts = space.dof_coordinates();
  const int p = space.order();

  // Local index of the lattice node (i, j) = p * xi.
  std::map<std::pair<int, int>, std::size_t> local;
  const auto nodes = space.basis().nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k)
    local[{static_cast<int>(std::lround(nodes[k].x * p)), static_cast<int>(std::lround(nodes[k].y * p))}] = k;

  std::vector<std::array<std::size_t, 3>> cells;
  const auto& mesh = space.mesh();
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const auto dofs = space.dofmap().element_dofs(e);
    auto at = [&](int i, int j) { return dofs[local.at({i, j})]; };
    for (int j = 0; j < p; ++j)
      for (int i = 0; i + j < p; ++i) {
        cells.push_back({at(i, j), at(i + 1, j), at(i, j + 1)});
        if (i + j + 2 <= p) cells.push_back({at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)});
      }
  }

  os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << pts.size() << " double\n";
  for (const auto& x : pts) os << num(x.x) << ' ' << num(x.y) << " 0\n";
  os << "CELLS " << cells.size() << ' ' << 4 * cells.size() << '\n';
  for (const auto& c : cells) os << "3 " << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
  os << "CELL_TYPES " << cells.size() << '\n';
  for (std::size_t i = 0; i < cells.size(); ++i) os << "5\n";
  os << "POINT_DATA " << pts.size() << '\n';
  for (std::size_t c = 0; c < m; ++c) {
    const auto v = space.nodal_values(u, m, c);
    os << "SCALARS u" << c + 1 << " double 1\nLOOKUP_TABLE default\n";
    for (double x : v) os << num(x) << '\n';
  }
}

void write_csv_1d(std::ostream& os, const FunctionSpace& space, std::span<const double> u, std::size_t m) {
  if (space.dimension() != 1) throw InvalidArgument("CSV field output is for 1D meshes");
  if (u.size() != space.num_dofs() * m) throw InvalidArgument("write_csv_1d: state has the wrong size");
  const auto pts = space.dof_coordinates();
  std::vector<std::vector<double>> vals;
  for (std::size_t c = 0; c < m; ++c) vals.push_back(space.nodal_values(u, m, c));
  os << "x";
  for (std::size_t c = 0; c < m; ++c) os << ",u" << c + 1;
  os << '\n';
  for (std::size_t i = 0; i < pts.size(); ++i) {
    os << num(pts[i].x);
    for (std::size_t c = 0; c < m; ++c) os << ',' << num(vals[c][i]);
    os << '\n';
  }
}

void write_energy_csv(std::ostream& os, const std::vector<Sample>& history) {
  os << "step,t,energy,umax,umin\n";
  for (const auto& s : history)
    os << s.step << ',' << num(s.t) << ',' << num(s.energy) << ',' << num(s.umax) << ',' << num(s.umin) << '\n';
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("fitted_slope: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidArgument("fitted_slope: values must be positive");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw InvalidArgument("fitted_slope: x values coincide");
  return (n * sxy - sx * sy) / den;
}

}  // namespace sbpcg::cli
