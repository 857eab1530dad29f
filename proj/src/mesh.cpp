#include "sbpcg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "sbpcg/error.hpp"

namespace sbpcg {

namespace {

double dist(const Point& a, const Point& b) { return std::hypot(b.x - a.x, b.y - a.y); }

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

std::array<std::size_t, 2> sorted_pair(std::size_t a, std::size_t b) {
  return a < b ? std::array<std::size_t, 2>{a, b} : std::array<std::size_t, 2>{b, a};
}

}  // namespace

Mesh::Mesh(int dimension, std::vector<Point> vertices, std::vector<std::array<std::size_t, 3>> elements,
           std::vector<BoundaryFace> boundary)
    : dim_(dimension), vertices_(std::move(vertices)), elements_(std::move(elements)), boundary_(std::move(boundary)) {
  if (dim_ != 1 && dim_ != 2) throw MeshError("mesh dimension must be 1 or 2");
  if (elements_.empty()) throw MeshError("mesh has no elements");
  const std::size_t nv = num_vertices_per_element();
  for (std::size_t e = 0; e < elements_.size(); ++e)
    for (std::size_t k = 0; k < nv; ++k)
      if (elements_[e][k] >= vertices_.size())
        throw MeshError("element " + std::to_string(e) + " references missing vertex");

  for (std::size_t e = 0; e < elements_.size(); ++e) {
    if (dim_ == 1) {
      if (!(element_measure(e) > 0.0)) throw MeshError("degenerate or reversed interval " + std::to_string(e));
      continue;
    }
    const auto& el = elements_[e];
    const Point &a = vertices_[el[0]], &b = vertices_[el[1]], &c = vertices_[el[2]];
    const double h = std::max({dist(a, b), dist(b, c), dist(c, a)});
    if (signed_area(a, b, c) <= 1e-14 * h * h)
      throw MeshError("degenerate or clockwise triangle " + std::to_string(e));
  }
  build_topology();
}

void Mesh::build_topology() {
  // Face usage: in 1D a face is a vertex, in 2D an undirected edge.
  std::map<std::array<std::size_t, 2>, std::size_t> face_id;
  std::vector<int> uses;
  elem_edges_.assign(elements_.size(), {0, 0, 0});
  const int nf = dim_ == 1 ? 2 : 3;
  for (std::size_t e = 0; e < elements_.size(); ++e)
    for (int f = 0; f < nf; ++f) {
      std::array<std::size_t, 2> key;
      if (dim_ == 1) {
        key = {elements_[e][static_cast<std::size_t>(f)], elements_[e][static_cast<std::size_t>(f)]};
      } else {
        const auto fv = face_vertices(e, f);
        key = sorted_pair(fv[0], fv[1]);
      }
      auto [it, inserted] = face_id.try_emplace(key, uses.size());
      if (inserted) {
        uses.push_back(0);
        if (dim_ == 2) edges_.push_back(key);
      }
      ++uses[it->second];
      elem_edges_[e][static_cast<std::size_t>(f)] = it->second;
    }
  for (std::size_t i = 0; i < uses.size(); ++i)
    if (uses[i] > 2) throw MeshError("nonconforming mesh: a face is shared by more than two elements");

  std::vector<int> tagged(uses.size(), 0);
  for (const auto& bf : boundary_) {
    if (bf.element >= elements_.size() || bf.local_face < 0 || bf.local_face >= nf)
      throw MeshError("boundary face references missing element/face");
    const std::size_t id = elem_edges_[bf.element][static_cast<std::size_t>(bf.local_face)];
    if (uses[id] != 1) throw MeshError("boundary face " + std::to_string(bf.element) + ":" +
                                       std::to_string(bf.local_face) + " is an interior face");
    if (tagged[id]++) throw MeshError("boundary face listed twice");
  }
  for (std::size_t i = 0; i < uses.size(); ++i)
    if (uses[i] == 1 && !tagged[i])
      throw MeshError("nonconforming mesh: untagged face used by a single element (hanging node?)");
}

std::array<std::size_t, 2> Mesh::face_vertices(std::size_t elem, int face) const {
  const auto& el = elements_[elem];
  if (dim_ == 1) return {el[static_cast<std::size_t>(face)], el[static_cast<std::size_t>(face)]};
  return {el[static_cast<std::size_t>(face)], el[static_cast<std::size_t>((face + 1) % 3)]};
}

Point Mesh::normal(std::size_t elem, int face) const {
  if (dim_ == 1) return {face == 0 ? -1.0 : 1.0, 0.0};
  const auto fv = face_vertices(elem, face);
  const Point& a = vertices_[fv[0]];
  const Point& b = vertices_[fv[1]];
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len = std::hypot(dx, dy);
  return {dy / len, -dx / len};
}

double Mesh::face_measure(std::size_t elem, int face) const {
  if (dim_ == 1) return 1.0;
  const auto fv = face_vertices(elem, face);
  return dist(vertices_[fv[0]], vertices_[fv[1]]);
}

double Mesh::element_measure(std::size_t elem) const {
  const auto& el = elements_[elem];
  if (dim_ == 1) return vertices_[el[1]].x - vertices_[el[0]].x;
  return signed_area(vertices_[el[0]], vertices_[el[1]], vertices_[el[2]]);
}

double Mesh::element_size(std::size_t elem) const {
  if (dim_ == 1) return element_measure(elem);
  const auto& el = elements_[elem];
  const Point &a = vertices_[el[0]], &b = vertices_[el[1]], &c = vertices_[el[2]];
  return 4.0 * element_measure(elem) / (dist(a, b) + dist(b, c) + dist(c, a));
}

double Mesh::min_element_size() const {
  double h = element_size(0);
  for (std::size_t e = 1; e < elements_.size(); ++e) h = std::min(h, element_size(e));
  return h;
}

double Mesh::max_element_size() const {
  double h = element_size(0);
  for (std::size_t e = 1; e < elements_.size(); ++e) h = std::max(h, element_size(e));
  return h;
}

double Mesh::total_measure() const {
  double s = 0.0;
  for (std::size_t e = 0; e < elements_.size(); ++e) s += element_measure(e);
  return s;
}

double Mesh::boundary_measure(const std::string& tag) const {
  double s = 0.0;
  for (const auto& bf : boundary_)
    if (tag.empty() || bf.tag == tag) s += face_measure(bf.element, bf.local_face);
  return s;
}

bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
bool operator==(const BoundaryFace& a, const BoundaryFace& b) {
  return a.element == b.element && a.local_face == b.local_face && a.tag == b.tag;
}

bool same_mesh(const Mesh& a, const Mesh& b) {
  if (a.dimension() != b.dimension() || a.vertices() != b.vertices() || a.boundary_faces() != b.boundary_faces() ||
      a.num_elements() != b.num_elements())
    return false;
  const std::size_t nv = a.num_vertices_per_element();
  for (std::size_t e = 0; e < a.num_elements(); ++e)
    for (std::size_t k = 0; k < nv; ++k)
      if (a.elements()[e][k] != b.elements()[e][k]) return false;
  return true;
}

// ---------------------------------------------------------------- file IO

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  // Next non-empty line with comments stripped; false at EOF.
  bool next(std::istringstream& out) {
    std::string line;
    while (std::getline(is_, line)) {
      ++line_no_;
      if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      out.clear();
      out.str(line);
      return true;
    }
    return false;
  }

  std::size_t line() const { return line_no_; }

 private:
  std::istream& is_;
  std::size_t line_no_ = 0;
};

template <class... T>
void parse_fields(LineReader& r, const char* what, T&... fields) {
  std::istringstream ls;
  if (!r.next(ls)) throw ParseError(std::string("unexpected end of file, expected ") + what, r.line() + 1);
  if (!((ls >> fields) && ...)) throw ParseError(std::string("malformed ") + what, r.line());
  std::string rest;
  if (ls >> rest) throw ParseError(std::string("trailing characters in ") + what, r.line());
}

}  // namespace

Mesh read_mesh(std::istream& is) {
  LineReader r(is);
  long dim = 0, nv = 0, ne = 0, nb = 0;
  parse_fields(r, "header 'dim nv ne nb'", dim, nv, ne, nb);
  if (dim != 1 && dim != 2) throw ParseError("dimension must be 1 or 2", r.line());
  if (nv <= 0 || ne <= 0 || nb < 0) throw ParseError("counts must be positive", r.line());

  std::vector<Point> verts(static_cast<std::size_t>(nv));
  for (auto& v : verts) {
    if (dim == 1) parse_fields(r, "vertex", v.x);
    else parse_fields(r, "vertex", v.x, v.y);
  }
  std::vector<std::array<std::size_t, 3>> elems(static_cast<std::size_t>(ne), {0, 0, 0});
  for (auto& el : elems) {
    long a = 0, b = 0, c = 0;
    if (dim == 1) parse_fields(r, "element", a, b);
    else parse_fields(r, "element", a, b, c);
    for (long v : {a, b, c})
      if (v < 0 || v >= nv) throw ParseError("vertex index out of range", r.line());
    el = {static_cast<std::size_t>(a), static_cast<std::size_t>(b), static_cast<std::size_t>(c)};
  }
  std::vector<BoundaryFace> bnd;
  bnd.reserve(static_cast<std::size_t>(nb));
  for (long k = 0; k < nb; ++k) {
    long e = 0, f = 0;
    std::string tag;
    parse_fields(r, "boundary face 'elem face tag'", e, f, tag);
    if (e < 0 || e >= ne) throw ParseError("boundary element index out of range", r.line());
    if (f < 0 || f > dim) throw ParseError("local face index out of range", r.line());
    bnd.push_back({static_cast<std::size_t>(e), static_cast<int>(f), tag});
  }
  std::istringstream extra;
  if (r.next(extra)) throw ParseError("unexpected data after boundary section", r.line());
  return Mesh(static_cast<int>(dim), std::move(verts), std::move(elems), std::move(bnd));
}

Mesh load_mesh(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open mesh file '" + path + "'");
  return read_mesh(f);
}

void write_mesh(std::ostream& os, const Mesh& mesh) {
  const int dim = mesh.dimension();
  os << dim << ' ' << mesh.num_vertices() << ' ' << mesh.num_elements() << ' ' << mesh.boundary_faces().size()
     << '\n';
  char buf[96];
  for (const auto& v : mesh.vertices()) {
    if (dim == 1) std::snprintf(buf, sizeof buf, "%.17g\n", v.x);
    else std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.x, v.y);
    os << buf;
  }
  for (const auto& el : mesh.elements()) {
    os << el[0] << ' ' << el[1];
    if (dim == 2) os << ' ' << el[2];
    os << '\n';
  }
  for (const auto& bf : mesh.boundary_faces()) os << bf.element << ' ' << bf.local_face << ' ' << bf.tag << '\n';
}

void save_mesh(const std::string& path, const Mesh& mesh) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write mesh file '" + path + "'");
  write_mesh(f, mesh);
}

// ------------------------------------------------------------- generators

namespace {

using Tagger = std::function<std::string(const Point&)>;

// Finds the faces used by a single triangle and tags them by midpoint.
Mesh with_auto_boundary(std::vector<Point> verts, std::vector<std::array<std::size_t, 3>> tris, const Tagger& tag) {
  std::map<std::array<std::size_t, 2>, int> uses;
  for (const auto& t : tris)
    for (int f = 0; f < 3; ++f) ++uses[sorted_pair(t[static_cast<std::size_t>(f)], t[static_cast<std::size_t>((f + 1) % 3)])];
  std::vector<BoundaryFace> bnd;
  for (std::size_t e = 0; e < tris.size(); ++e)
    for (int f = 0; f < 3; ++f) {
      const std::size_t a = tris[e][static_cast<std::size_t>(f)], b = tris[e][static_cast<std::size_t>((f + 1) % 3)];
      if (uses[sorted_pair(a, b)] == 1) {
        const Point mid{0.5 * (verts[a].x + verts[b].x), 0.5 * (verts[a].y + verts[b].y)};
        bnd.push_back({e, f, tag(mid)});
      }
    }
  return Mesh(2, std::move(verts), std::move(tris), std::move(bnd));
}

void add_ccw(std::vector<std::array<std::size_t, 3>>& tris, const std::vector<Point>& v, std::size_t a,
             std::size_t b, std::size_t c) {
  if (signed_area(v[a], v[b], v[c]) < 0) std::swap(b, c);
  tris.push_back({a, b, c});
}

// Triangulates the strip between two closed rings whose vertices are
// evenly spaced in angle starting at angle 0.
void zipper(std::vector<std::array<std::size_t, 3>>& tris, const std::vector<Point>& v, std::size_t in0,
            std::size_t n_in, std::size_t out0, std::size_t n_out) {
  std::size_t i = 0, o = 0;
  while (i < n_in || o < n_out) {
    // Compare the angular position of the next inner and outer vertex
    // (cross-multiplied fractions keep this exact).
    const bool advance_outer = i == n_in || (o < n_out && (o + 1) * n_in <= (i + 1) * n_out);
    const std::size_t a = in0 + i % n_in, b = out0 + o % n_out;
    if (advance_outer) {
      add_ccw(tris, v, a, b, out0 + (o + 1) % n_out);
      ++o;
    } else {
      add_ccw(tris, v, a, b, in0 + (i + 1) % n_in);
      ++i;
    }
  }
}

void push_ring(std::vector<Point>& v, double r, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    v.push_back({r * std::cos(th), r * std::sin(th)});
  }
}

}  // namespace

Mesh unit_square(int n) {
  if (n < 1) throw InvalidArgument("unit_square: N must be >= 1");
  const auto N = static_cast<std::size_t>(n);
  std::vector<Point> verts;
  verts.reserve((N + 1) * (N + 1));
  for (std::size_t j = 0; j <= N; ++j)
    for (std::size_t i = 0; i <= N; ++i)
      verts.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
  std::vector<std::array<std::size_t, 3>> tris;
  std::vector<BoundaryFace> bnd;
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t i = 0; i < N; ++i) {
      const std::size_t v00 = j * (N + 1) + i, v10 = v00 + 1, v01 = v00 + N + 1, v11 = v01 + 1;
      tris.push_back({v00, v10, v11});
      if (j == 0) bnd.push_back({tris.size() - 1, 0, "bottom"});
      if (i == N - 1) bnd.push_back({tris.size() - 1, 1, "right"});
      tris.push_back({v00, v11, v01});
      if (j == N - 1) bnd.push_back({tris.size() - 1, 1, "top"});
      if (i == 0) bnd.push_back({tris.size() - 1, 2, "left"});
    }
  return Mesh(2, std::move(verts), std::move(tris), std::move(bnd));
}

Mesh unit_disk(int n) {
  if (n < 1) throw InvalidArgument("unit_disk: N must be >= 1");
  std::vector<Point> verts{{0.0, 0.0}};
  std::vector<std::size_t> start{0};
  for (int k = 1; k <= n; ++k) {
    start.push_back(verts.size());
    push_ring(verts, static_cast<double>(k) / n, static_cast<std::size_t>(6 * k));
  }
  std::vector<std::array<std::size_t, 3>> tris;
  for (std::size_t j = 0; j < 6; ++j) add_ccw(tris, verts, 0, 1 + j, 1 + (j + 1) % 6);
  for (int k = 2; k <= n; ++k)
    zipper(tris, verts, start[static_cast<std::size_t>(k - 1)], static_cast<std::size_t>(6 * (k - 1)),
           start[static_cast<std::size_t>(k)], static_cast<std::size_t>(6 * k));
  return with_auto_boundary(std::move(verts), std::move(tris), [](const Point&) { return std::string("boundary"); });
}

Mesh annulus(double r0, double r1, int n) {
  if (n < 1 || !(r0 > 0.0) || !(r1 > r0)) throw InvalidArgument("annulus: need N >= 1 and 0 < r0 < r1");
  const double h = (r1 - r0) / n;
  std::vector<Point> verts;
  std::vector<std::size_t> start, count;
  for (int k = 0; k <= n; ++k) {
    const double r = r0 + (r1 - r0) * k / n;
    // Even counts keep the rings symmetric under (x,y) -> (-x,-y).
    auto c = static_cast<std::size_t>(std::lround(2.0 * std::numbers::pi * r / h));
    c = std::max<std::size_t>(c + (c % 2), 6);
    start.push_back(verts.size());
    count.push_back(c);
    push_ring(verts, r, c);
  }
  std::vector<std::array<std::size_t, 3>> tris;
  for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k)
    zipper(tris, verts, start[k], count[k], start[k + 1], count[k + 1]);
  const double rmid = 0.5 * (r0 + r1);
  return with_auto_boundary(std::move(verts), std::move(tris), [rmid](const Point& p) {
    return std::string(std::hypot(p.x, p.y) < rmid ? "inner" : "outer");
  });
}

Mesh interval(int n, IntervalKind kind, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("interval: N must be >= 1");
  std::vector<Point> verts;
  for (int i = 0; i <= n; ++i) verts.push_back({static_cast<double>(i) / n, 0.0});
  if (kind == IntervalKind::random) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    const double h = 1.0 / n;
    for (int i = 1; i < n; ++i) verts[static_cast<std::size_t>(i)].x += u(rng) * h;
  }
  std::vector<std::array<std::size_t, 3>> elems;
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) elems.push_back({i, i + 1, 0});
  std::vector<BoundaryFace> bnd{{0, 0, "left"}, {static_cast<std::size_t>(n - 1), 1, "right"}};
  return Mesh(1, std::move(verts), std::move(elems), std::move(bnd));
}

Mesh generate_mesh(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  auto num = [&](std::size_t i) -> double {
    if (i >= parts.size()) throw InvalidArgument("mesh spec '" + spec + "': missing parameter");
    try {
      std::size_t used = 0;
      const double v = std::stod(parts[i], &used);
      if (used != parts[i].size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw InvalidArgument("mesh spec '" + spec + "': bad number '" + parts[i] + "'");
    }
  };
  auto count = [&](std::size_t i) {
    const double v = num(i);
    if (v != std::floor(v)) throw InvalidArgument("mesh spec '" + spec + "': N must be an integer");
    return static_cast<int>(v);
  };
  if (parts.empty()) throw InvalidArgument("empty mesh spec");
  const std::string& kind = parts[0];
  if (kind == "unit_square" && parts.size() == 2) return unit_square(count(1));
  if (kind == "unit_disk" && parts.size() == 2) return unit_disk(count(1));
  if (kind == "annulus" && parts.size() == 4) return annulus(num(1), num(2), count(3));
  if (kind == "interval" && parts.size() == 2) return interval(count(1));
  if (kind == "interval" && (parts.size() == 3 || parts.size() == 4)) {
    if (parts[2] == "regular") return interval(count(1));
    if (parts[2] == "random")
      return interval(count(1), IntervalKind::random, parts.size() == 4 ? static_cast<std::uint64_t>(count(3)) : 0);
  }
  throw InvalidArgument("unknown mesh spec '" + spec + "'");
}

}  // namespace sbpcg
