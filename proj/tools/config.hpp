#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sbpcg/basis.hpp"
#include "sbpcg/problems.hpp"
#include "sbpcg/timeint.hpp"

namespace sbpcg::cli {

/// Settings of one command. Unset optionals fall back to the problem's
/// defaults.
struct RunConfig {
  std::string problem = "advection2d";
  std::optional<std::string> mesh;  // generator spec or mesh file
  std::optional<int> cells;         // replaces the generator's resolution
  bool random_mesh = false;         // 1D: perturbed interior nodes
  std::uint64_t seed = 7;
  std::optional<int> order;
  std::optional<BasisKind> basis;
  std::optional<int> volume_quad;
  std::optional<int> edge_quad;
  std::optional<double> split_alpha;
  double sat_scale = 1.0;
  std::optional<Scheme> scheme;
  std::optional<double> cfl;
  StepRule step_rule = StepRule::incircle;
  std::optional<double> t_end;
  std::optional<long> max_steps;  // <= 0: no cap
  std::optional<double> blowup;    // abort when max |u| exceeds this
  MassSolverKind mass_solver = MassSolverKind::cg;
  std::string output = "out";
  std::string format = "auto";  // auto | vtk | csv
  bool smooth_bump = false;
  double r0 = 0.0;
  double r1 = 0.0;
  std::optional<double> delta;  // R13 boundary parameter
  int levels = 4;
  int eigs = 10;
  bool sbp_guard = true;

  bool operator==(const RunConfig&) const = default;
};

/// Config keys in serialization order; '-' and '_' are interchangeable.
const std::vector<std::string>& config_keys();

/// Sets one key from its text form. Throws InvalidArgument on unknown keys
/// or malformed values.
void set_value(RunConfig& c, const std::string& key, const std::string& value);

/// `key = value` lines, '#' comments. Errors carry the line number.
RunConfig parse_config(std::istream& is, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});
/// Every set field as `key = value`; doubles with 17 significant digits.
void write_config(std::ostream& os, const RunConfig& c);
std::string to_text(const RunConfig& c);

/// The problem spec with all overrides applied.
ProblemSpec build_spec(const RunConfig& c);
/// Mesh named by the config or, failing that, the problem default.
std::string mesh_recipe(const RunConfig& c, const ProblemSpec& base);
std::shared_ptr<const Mesh> build_mesh(const std::string& recipe);

}  // namespace sbpcg::cli
