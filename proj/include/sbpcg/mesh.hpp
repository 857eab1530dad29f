#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sbpcg {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct BoundaryFace {
  std::size_t element;
  int local_face;
  std::string tag;
};

/// 1D interval grid or 2D conforming triangulation.
///
/// Triangle local face k joins vertices k and (k+1)%3. Interval face 0 is
/// the left end (normal -1), face 1 the right end (normal +1). Elements are
/// stored counter-clockwise; load/construct reject anything else.
class Mesh {
 public:
  /// Validates and takes ownership. 1D meshes store y = 0 and use two
  /// entries per element; the third entry is ignored.
  Mesh(int dimension, std::vector<Point> vertices, std::vector<std::array<std::size_t, 3>> elements,
       std::vector<BoundaryFace> boundary);

  int dimension() const { return dim_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_elements() const { return elements_.size(); }
  std::size_t num_vertices_per_element() const { return dim_ == 1 ? 2 : 3; }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<std::array<std::size_t, 3>>& elements() const { return elements_; }
  const std::vector<BoundaryFace>& boundary_faces() const { return boundary_; }

  /// Global vertex indices of a face, in local order.
  std::array<std::size_t, 2> face_vertices(std::size_t elem, int face) const;
  /// Outward unit normal of a face.
  Point normal(std::size_t elem, int face) const;
  /// Face length (1 in 1D).
  double face_measure(std::size_t elem, int face) const;
  /// Signed area (2D) or length (1D).
  double element_measure(std::size_t elem) const;
  /// Incircle diameter (2D) or cell width (1D).
  double element_size(std::size_t elem) const;
  double min_element_size() const;
  double max_element_size() const;
  double total_measure() const;

  /// Total length of boundary faces, optionally restricted to one tag.
  double boundary_measure(const std::string& tag = {}) const;

  /// Undirected mesh edges (2D only) with a stable numbering; used by the
  /// DoF map. edge_of(elem, face) gives the id for a local face.
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<std::array<std::size_t, 2>>& edges() const { return edges_; }
  std::size_t edge_of(std::size_t elem, int face) const { return elem_edges_[elem][static_cast<std::size_t>(face)]; }

 private:
  void build_topology();

  int dim_;
  std::vector<Point> vertices_;
  std::vector<std::array<std::size_t, 3>> elements_;
  std::vector<BoundaryFace> boundary_;
  std::vector<std::array<std::size_t, 2>> edges_;
  std::vector<std::array<std::size_t, 3>> elem_edges_;
};

bool operator==(const Point& a, const Point& b);
bool operator==(const BoundaryFace& a, const BoundaryFace& b);
/// Field-by-field equality (exact comparison of coordinates).
bool same_mesh(const Mesh& a, const Mesh& b);

Mesh read_mesh(std::istream& is);
Mesh load_mesh(const std::string& path);
void write_mesh(std::ostream& os, const Mesh& mesh);
void save_mesh(const std::string& path, const Mesh& mesh);

enum class IntervalKind { regular, random };

/// N x N squares, each split along the diagonal into two triangles.
/// Tags: left, right, bottom, top.
Mesh unit_square(int n);
/// Unit disk from N concentric rings (ring k has 6k vertices); 6N^2
/// triangles, boundary tag "boundary".
Mesh unit_disk(int n);
/// Annulus r0 <= r <= r1 with N radial layers; tags "inner", "outer".
Mesh annulus(double r0, double r1, int n);
/// [0,1] split into N cells. The random variant moves each interior node by
/// at most 0.4 of the local spacing. Tags "left", "right".
Mesh interval(int n, IntervalKind kind = IntervalKind::regular, std::uint64_t seed = 0);

/// Parses "unit_square:16", "unit_disk:13", "annulus:0.5:1:5",
/// "interval:100", "interval:100:random:7".
Mesh generate_mesh(const std::string& spec);

}  // namespace sbpcg
