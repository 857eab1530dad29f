#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "sbpcg/error.hpp"
#include "sbpcg/mesh.hpp"
#include "sbpcg/space.hpp"

using namespace sbpcg;

namespace {

Mesh from_text(const std::string& s) {
  std::istringstream is(s);
  return read_mesh(is);
}

double signed_area(const Mesh& m, std::size_t e) {
  const auto& el = m.elements()[e];
  const Point a = m.vertices()[el[0]], b = m.vertices()[el[1]], c = m.vertices()[el[2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

}  // namespace

TEST_CASE("reference triangle from file") {
  const Mesh m = from_text(
      "# reference triangle\n"
      "2 3 1 3\n0 0\n1 0\n0 1\n0 1 2\n0 0 b\n0 1 b\n0 2 b\n");
  CHECK(m.num_elements() == 1);
  CHECK(m.boundary_faces().size() == 3);
  const double s = 1.0 / std::sqrt(2.0);
  const Point n0 = m.normal(0, 0), n1 = m.normal(0, 1), n2 = m.normal(0, 2);
  CHECK(n0.x == doctest::Approx(0.0));
  CHECK(n0.y == doctest::Approx(-1.0));
  CHECK(n1.x == doctest::Approx(s).epsilon(1e-14));
  CHECK(n1.y == doctest::Approx(s).epsilon(1e-14));
  CHECK(n2.x == doctest::Approx(-1.0));
  CHECK(n2.y == doctest::Approx(0.0));
}

TEST_CASE("1D mesh from file") {
  const Mesh m = from_text("1 3 2 2\n0\n0.5\n1\n0 1\n1 2\n0 0 left\n1 1 right\n");
  CHECK(m.dimension() == 1);
  CHECK(m.num_elements() == 2);
  CHECK(m.normal(0, 0).x == -1.0);
  CHECK(m.normal(1, 1).x == 1.0);
}

TEST_CASE("parse errors carry line numbers") {
  try {
    from_text("2 3 1 3\n0 0\n1 zero\n0 1\n0 1 2\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(from_text("2 3 1 0\n0 0\n1 0\n"), ParseError);
}

TEST_CASE("invalid meshes are rejected") {
  // clockwise triangle
  CHECK_THROWS_AS(from_text("2 3 1 3\n0 0\n0 1\n1 0\n0 1 2\n0 0 b\n0 1 b\n0 2 b\n"), MeshError);
  // degenerate triangle
  CHECK_THROWS_AS(from_text("2 3 1 3\n0 0\n1 0\n2 0\n0 1 2\n0 0 b\n0 1 b\n0 2 b\n"), MeshError);
  // untagged boundary face
  CHECK_THROWS_AS(from_text("2 3 1 2\n0 0\n1 0\n0 1\n0 1 2\n0 0 b\n0 1 b\n"), MeshError);
  // hanging node: vertex 4 splits the edge (1,2) of the first triangle
  CHECK_THROWS_AS(from_text("2 5 3 0\n0 0\n1 0\n0 1\n1 1\n0.5 0.5\n0 1 2\n1 3 4\n4 3 2\n"), MeshError);
  // reversed interval
  CHECK_THROWS_AS(from_text("1 2 1 2\n1\n0\n0 1\n0 0 l\n0 1 r\n"), MeshError);
}

TEST_CASE("generators") {
  const Mesh sq = unit_square(16);
  CHECK(sq.num_elements() == 512);
  CHECK(sq.num_vertices() == 289);
  CHECK(sq.boundary_measure() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(sq.total_measure() == doctest::Approx(1.0).epsilon(1e-12));

  const Mesh iv = interval(2);
  REQUIRE(iv.num_vertices() == 3);
  CHECK(iv.vertices()[0].x == 0.0);
  CHECK(iv.vertices()[1].x == 0.5);
  CHECK(iv.vertices()[2].x == 1.0);

  const Mesh an = annulus(0.5, 1.0, 4);
  for (const auto& f : an.boundary_faces())
    for (std::size_t v : an.face_vertices(f.element, f.local_face)) {
      const double r = std::hypot(an.vertices()[v].x, an.vertices()[v].y);
      CHECK((std::abs(r - 0.5) < 1e-12 || std::abs(r - 1.0) < 1e-12));
    }
  CHECK(an.boundary_measure("inner") < std::numbers::pi);
  CHECK(an.boundary_measure("outer") < 2.0 * std::numbers::pi);

  // Polygonal disk boundary approaches 2 pi from below.
  double prev = 0.0;
  for (int n : {2, 4, 8, 16}) {
    const double len = unit_disk(n).boundary_measure();
    CHECK(len < 2.0 * std::numbers::pi);
    CHECK(len > prev);
    prev = len;
  }
  CHECK(2.0 * std::numbers::pi - prev < 1e-2);

  for (const Mesh* m : {&sq, &an}) {
    for (std::size_t e = 0; e < m->num_elements(); ++e) CHECK(signed_area(*m, e) > 0.0);
    for (const auto& f : m->boundary_faces()) {
      const Point n = m->normal(f.element, f.local_face);
      CHECK(std::hypot(n.x, n.y) == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("random interval is seeded and monotone") {
  const Mesh a = interval(50, IntervalKind::random, 9);
  const Mesh b = interval(50, IntervalKind::random, 9);
  const Mesh c = interval(50, IntervalKind::random, 10);
  CHECK(same_mesh(a, b));
  CHECK_FALSE(same_mesh(a, c));
  for (std::size_t i = 1; i < a.num_vertices(); ++i) CHECK(a.vertices()[i].x > a.vertices()[i - 1].x);
  CHECK(a.vertices()[0].x == 0.0);
  CHECK(a.vertices()[50].x == 1.0);
}

TEST_CASE("mesh file round trip") {
  for (const char* spec : {"unit_square:5", "unit_disk:3", "annulus:0.5:1:2", "interval:7:random:2"}) {
    const Mesh m = generate_mesh(spec);
    std::stringstream ss;
    write_mesh(ss, m);
    const Mesh r = read_mesh(ss);
    CHECK(same_mesh(m, r));
  }
  CHECK_THROWS_AS(generate_mesh("unit_cube:3"), InvalidArgument);
  CHECK_THROWS_AS(generate_mesh("unit_square:x"), InvalidArgument);
}

TEST_CASE("DoF counts") {
  auto iv = std::make_shared<const Mesh>(interval(2));
  CHECK(DofMap(*iv, 1, BasisKind::lagrange).num_dofs() == 3);
  CHECK(DofMap(*iv, 3, BasisKind::lagrange).num_dofs() == 7);

  const Mesh sq = unit_square(4);
  CHECK(DofMap(sq, 1, BasisKind::lagrange).num_dofs() == sq.num_vertices());

  // Two reference-like triangles sharing the edge (1,0)-(0,1).
  std::istringstream is("2 4 2 4\n0 0\n1 0\n0 1\n1 1\n0 1 2\n1 3 2\n0 0 b\n0 2 b\n1 0 b\n1 1 b\n");
  const Mesh pair = read_mesh(is);
  const DofMap d(pair, 3, BasisKind::bernstein);
  CHECK(d.num_dofs() == 16);
  const auto a = d.element_dofs(0), b = d.element_dofs(1);
  std::set<std::size_t> sa(a.begin(), a.end()), common;
  for (auto x : b)
    if (sa.count(x)) common.insert(x);
  CHECK(common.size() == 4);
}

TEST_CASE("shared DoFs sit at coincident nodes") {
  for (int p = 1; p <= 3; ++p) {
    auto mesh = std::make_shared<const Mesh>(unit_disk(3));
    const FunctionSpace V(mesh, p, BasisKind::lagrange);
    const auto nodes = V.basis().nodes();
    std::vector<Point> seen(V.num_dofs(), Point{1e300, 1e300});
    for (std::size_t e = 0; e < mesh->num_elements(); ++e) {
      const auto g = V.geometry(e);
      const auto dofs = V.dofmap().element_dofs(e);
      for (std::size_t i = 0; i < dofs.size(); ++i) {
        const Point x = g.map(nodes[i]);
        if (seen[dofs[i]].x == 1e300) {
          seen[dofs[i]] = x;
        } else {
          CHECK(std::abs(seen[dofs[i]].x - x.x) < 1e-13);
          CHECK(std::abs(seen[dofs[i]].y - x.y) < 1e-13);
        }
      }
    }
  }
}
