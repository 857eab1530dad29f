#include "config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sbpcg/error.hpp"

namespace sbpcg::cli {

namespace {

std::string normalize(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || errno == ERANGE) throw InvalidArgument(key + ": expected a number, got '" + v + "'");
  return x;
}

long to_long(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || errno == ERANGE) throw InvalidArgument(key + ": expected an integer, got '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const long x = to_long(key, v);
  if (x < -2147483647L || x > 2147483647L) throw InvalidArgument(key + ": integer out of range");
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw InvalidArgument(key + ": expected true or false, got '" + v + "'");
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool is_generator(const std::string& recipe) {
  for (const char* g : {"unit_square:", "unit_disk:", "annulus:", "interval:"})
    if (recipe.rfind(g, 0) == 0) return true;
  return false;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "problem", "mesh",       "cells",     "random_mesh", "seed",     "order",   "basis",       "volume_quad",
      "edge_quad", "split_alpha", "sat_scale", "scheme",    "cfl",      "step_rule", "t_end",    "max_steps", "blowup",
      "mass_solver", "output",  "format",    "smooth_bump", "r0",       "r1",      "delta",       "levels",
      "eigs",      "sbp_guard"};
  return keys;
}

void set_value(RunConfig& c, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = normalize(trim(raw_key));
  const std::string v = trim(raw_value);
  if (key == "problem") {
    const auto names = problem_names();
    if (std::find(names.begin(), names.end(), v) == names.end()) throw InvalidArgument("unknown problem '" + v + "'");
    c.problem = v;
  } else if (key == "mesh") {
    if (v.empty()) throw InvalidArgument("mesh: empty value");
    c.mesh = v;
  } else if (key == "cells") {
    const int n = to_int(key, v);
    if (n < 1) throw InvalidArgument("cells must be positive");
    c.cells = n;
  } else if (key == "random_mesh") {
    c.random_mesh = to_bool(key, v);
  } else if (key == "seed") {
    const long s = to_long(key, v);
    if (s < 0) throw InvalidArgument("seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  } else if (key == "order") {
    const int p = to_int(key, v);
    if (p < 1 || p > 3) throw InvalidArgument("order must be 1, 2 or 3");
    c.order = p;
  } else if (key == "basis") {
    c.basis = parse_basis_kind(v);
  } else if (key == "volume_quad") {
    c.volume_quad = to_int(key, v);
  } else if (key == "edge_quad") {
    c.edge_quad = to_int(key, v);
  } else if (key == "split_alpha") {
    c.split_alpha = to_double(key, v);
  } else if (key == "sat_scale") {
    c.sat_scale = to_double(key, v);
  } else if (key == "scheme") {
    c.scheme = parse_scheme(v);
  } else if (key == "cfl") {
    const double x = to_double(key, v);
    if (!(x > 0.0)) throw InvalidArgument("cfl must be positive");
    c.cfl = x;
  } else if (key == "step_rule") {
    c.step_rule = parse_step_rule(v);
  } else if (key == "t_end") {
    const double x = to_double(key, v);
    if (!(x > 0.0)) throw InvalidArgument("t_end must be positive");
    c.t_end = x;
  } else if (key == "max_steps") {
    c.max_steps = to_long(key, v);
  } else if (key == "blowup") {
    const double x = to_double(key, v);
    if (!(x > 0.0)) throw InvalidArgument("blowup must be positive");
    c.blowup = x;
  } else if (key == "mass_solver") {
    c.mass_solver = parse_mass_solver(v);
  } else if (key == "output") {
    c.output = v;
  } else if (key == "format") {
    if (v != "auto" && v != "vtk" && v != "csv") throw InvalidArgument("format must be auto, vtk or csv");
    c.format = v;
  } else if (key == "smooth_bump") {
    c.smooth_bump = to_bool(key, v);
  } else if (key == "r0") {
    c.r0 = to_double(key, v);
  } else if (key == "r1") {
    c.r1 = to_double(key, v);
  } else if (key == "delta") {
    c.delta = to_double(key, v);
  } else if (key == "levels") {
    c.levels = to_int(key, v);
  } else if (key == "eigs") {
    const int k = to_int(key, v);
    if (k < 1) throw InvalidArgument("eigs must be positive");
    c.eigs = k;
  } else if (key == "sbp_guard") {
    c.sbp_guard = to_bool(key, v);
  } else {
    throw InvalidArgument("unknown config key '" + raw_key + "'");
  }
}

RunConfig parse_config(std::istream& is, RunConfig base) {
  std::string line;
  std::size_t no = 0;
  while (std::getline(is, line)) {
    ++no;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", no);
    try {
      set_value(base, line.substr(0, eq), line.substr(eq + 1));
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), no);
    }
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  return parse_config(in, std::move(base));
}

void write_config(std::ostream& os, const RunConfig& c) {
  auto kv = [&os](const char* k, const std::string& v) { os << k << " = " << v << '\n'; };
  kv("problem", c.problem);
  if (c.mesh) kv("mesh", *c.mesh);
  if (c.cells) kv("cells", std::to_string(*c.cells));
  kv("random_mesh", c.random_mesh ? "true" : "false");
  kv("seed", std::to_string(c.seed));
  if (c.order) kv("order", std::to_string(*c.order));
  if (c.basis) kv("basis", to_string(*c.basis));
  if (c.volume_quad) kv("volume_quad", std::to_string(*c.volume_quad));
  if (c.edge_quad) kv("edge_quad", std::to_string(*c.edge_quad));
  if (c.split_alpha) kv("split_alpha", fmt(*c.split_alpha));
  kv("sat_scale", fmt(c.sat_scale));
  if (c.scheme) kv("scheme", to_string(*c.scheme));
  if (c.cfl) kv("cfl", fmt(*c.cfl));
  kv("step_rule", to_string(c.step_rule));
  if (c.t_end) kv("t_end", fmt(*c.t_end));
  if (c.max_steps) kv("max_steps", std::to_string(*c.max_steps));
  if (c.blowup) kv("blowup", fmt(*c.blowup));
  kv("mass_solver", to_string(c.mass_solver));
  kv("output", c.output);
  kv("format", c.format);
  kv("smooth_bump", c.smooth_bump ? "true" : "false");
  kv("r0", fmt(c.r0));
  kv("r1", fmt(c.r1));
  if (c.delta) kv("delta", fmt(*c.delta));
  kv("levels", std::to_string(c.levels));
  kv("eigs", std::to_string(c.eigs));
  kv("sbp_guard", c.sbp_guard ? "true" : "false");
}

std::string to_text(const RunConfig& c) {
  std::ostringstream os;
  write_config(os, c);
  return os.str();
}

std::string mesh_recipe(const RunConfig& c, const ProblemSpec& base) {
  std::string recipe = c.mesh.value_or(base.mesh);
  if (!c.cells && !c.random_mesh) return recipe;
  if (!is_generator(recipe)) throw InvalidArgument("cells/random_mesh need a generated mesh, not a file");
  std::vector<std::string> parts;
  std::stringstream ss(recipe);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts[0] == "interval") {
    const std::string n = c.cells ? std::to_string(*c.cells) : parts.at(1);
    if (c.random_mesh) return "interval:" + n + ":random:" + std::to_string(c.seed);
    return "interval:" + n + (parts.size() > 2 ? ":" + parts[2] + (parts.size() > 3 ? ":" + parts[3] : "") : "");
  }
  if (c.random_mesh) throw InvalidArgument("random_mesh applies to 1D interval meshes only");
  parts.back() = std::to_string(*c.cells);
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += ":" + parts[i];
  return out;
}

std::shared_ptr<const Mesh> build_mesh(const std::string& recipe) {
  if (is_generator(recipe)) return std::make_shared<const Mesh>(generate_mesh(recipe));
  return std::make_shared<const Mesh>(load_mesh(recipe));
}

ProblemSpec build_spec(const RunConfig& c) {
  ProblemSpec s = c.problem == "wave1d" ? wave_1d(c.r0, c.r1) : make_problem(c.problem, !c.smooth_bump);
  s.mesh = mesh_recipe(c, s);
  if (c.order) s.order = *c.order;
  if (c.basis) s.basis = *c.basis;
  if (c.volume_quad) s.volume_degree = *c.volume_quad;
  if (c.edge_quad) s.edge_degree = *c.edge_quad;
  if (c.split_alpha) s.split_alpha = *c.split_alpha;
  s.sat_scale = c.sat_scale;
  if (c.scheme) s.scheme = *c.scheme;
  if (c.cfl) s.cfl = *c.cfl;
  s.step_rule = c.step_rule;
  if (c.t_end) s.t_end = *c.t_end;
  if (c.max_steps) s.max_steps = *c.max_steps;
  if (c.blowup) s.blowup_threshold = *c.blowup;
  if (c.delta) s.r13.delta = *c.delta;
  s.sbp_guard = c.sbp_guard;
  return s;
}

}  // namespace sbpcg::cli
