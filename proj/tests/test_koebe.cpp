#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "dmin/koebe.hpp"
#include "dmin/pattern.hpp"
#include "dmin/quadgraph.hpp"

using namespace dmin;

namespace {

const SphericalPattern& cube_pattern(int k = 2) {
  static std::map<int, SphericalPattern> cache;
  auto it = cache.find(k);
  if (it == cache.end()) {
    const RefinedCube c = make_refined_cube(2, 2, k);
    const CircleAdjacency adj = CircleAdjacency::from_graph(c.graph);
    const SphericalFunctional fn(adj, default_targets(c.graph, adj));
    const SolveResult res = solve_pattern(fn, Eigen::VectorXd::Zero(fn.size()));
    it = cache.emplace(k, normalize_pattern(layout_pattern(c.graph, res.rho))).first;
  }
  return it->second;
}

}  // namespace

TEST_CASE("Koebe cube with vertex spheres") {
  const KoebePolyhedron k = build_koebe(cube_pattern(), RoleChoice::Swapped);
  const SIsothermicSurface& s = k.surface;
  const SQuadGraph& g = *s.graph;
  int spheres = 0;
  for (int v = 0; v < s.vertex_count(); ++v) {
    if (!s.is_sphere(v)) continue;
    ++spheres;
    CHECK(g.degree(v) == 3);
    CHECK(s.position[v].norm() == doctest::Approx(std::sqrt(1.5)).epsilon(1e-9));
    CHECK(s.radius[v] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-9));
  }
  CHECK(spheres == 8);
  const KoebeResiduals r = koebe_residuals(k);
  CHECK(r.sphere_orthogonality <= 1e-8);
  CHECK(r.edge_tangency <= 1e-8);
  CHECK(r.surface.sphere_tangency <= 1e-8);
  // Edge of the cube: adjacent corner spheres touch at the contact between them.
  for (int b = 0; b < g.vertex_count(); ++b) {
    if (!s.is_contact(b)) continue;
    std::vector<int> sp;
    for (int e : g.incident_edges(b))
      if (s.is_sphere(g.other_end(e, b))) sp.push_back(g.other_end(e, b));
    REQUIRE(sp.size() == 2);
    const Vec3 d = s.position[sp[1]] - s.position[sp[0]];
    CHECK(d.norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK((s.position[sp[0]] + s.radius[sp[0]] * d.normalized() - s.position[b]).norm() < 1e-9);
    // Segment between touching centers is tangent to the midsphere.
    CHECK(segment_point_distance(s.position[sp[0]], s.position[sp[1]], Vec3::Zero()) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("both role choices touch the midsphere at the same points") {
  const KoebePolyhedron a = build_koebe(cube_pattern(), RoleChoice::AsLabeled);
  const KoebePolyhedron b = build_koebe(cube_pattern(), RoleChoice::Swapped);
  for (int v = 0; v < a.surface.vertex_count(); ++v) {
    if (a.surface.is_contact(v)) {
      CHECK((a.surface.position[v] - b.surface.position[v]).norm() < 1e-12);
      CHECK(std::fabs(a.surface.position[v].norm() - 1) < 1e-12);
    } else {
      CHECK(a.surface.is_sphere(v) == b.surface.is_circle(v));
    }
  }
  // Face spheres of the cube: radius tan(pi/4) = 1 at distance sqrt 2.
  for (int v = 0; v < a.surface.vertex_count(); ++v)
    if (a.surface.is_sphere(v)) {
      CHECK(a.surface.radius[v] == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(a.surface.position[v].norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    }
  CHECK(koebe_residuals(a).surface.max() <= 1e-8);
}

TEST_CASE("refined cube Koebe polyhedra") {
  for (int k : {2, 4}) {
    const KoebePolyhedron p = build_koebe(cube_pattern(k));
    const KoebeResiduals r = koebe_residuals(p);
    CHECK(r.sphere_orthogonality <= 1e-8);
    CHECK(r.circles_on_midsphere <= 1e-8);
    CHECK(r.edge_tangency <= 1e-8);
    const SurfaceResiduals& s = r.surface;
    CHECK(s.sphere_tangency <= 1e-8);
    CHECK(s.contact_on_sphere <= 1e-8);
    CHECK(s.contact_on_circle <= 1e-8);
    CHECK(s.circle_sphere_angle <= 1e-8);
    CHECK(s.kite_planarity <= 1e-9);
    CHECK(s.kite_cross_ratio <= 1e-8);
    CHECK(s.faces_checked == p.surface.graph->face_count());
  }
}

TEST_CASE("central extension kites") {
  const KoebePolyhedron p = build_koebe(cube_pattern(4));
  const KiteMesh m = central_extension(p.surface);
  const SQuadGraph& g = *m.graph;
  for (const Face& f : g.faces()) {
    CHECK(std::abs(cross_ratio_space(m.position[f[0]], m.position[f[1]], m.position[f[2]], m.position[f[3]]) + 1.0) <=
          1e-8);
  }
  // Kites around a circle vertex lie in the circle's plane.
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!p.surface.is_circle(v)) continue;
    const Circle3D c = p.surface.circle(v);
    for (int f : g.faces_around(v))
      for (int w : g.face(f)) CHECK(std::fabs(c.normal.dot(m.position[w] - c.center)) < 1e-9);
  }
}

TEST_CASE("Touching Coins") {
  SUBCASE("Koebe polyhedron") {
    const KoebePolyhedron p = build_koebe(cube_pattern(2));
    int checked = 0;
    CHECK(touching_coins_residual(p.surface, &checked) <= 1e-8);
    CHECK(checked == 6);
    const KoebePolyhedron q = build_koebe(cube_pattern(4));
    CHECK(touching_coins_residual(q.surface, &checked) <= 1e-8);
    CHECK(checked > 6);
  }
  SUBCASE("coplanar coins are indeterminate") {
    std::array<Circle3D, 4> c{Circle3D{{1, 1, 0}, 1, {0, 0, 1}}, Circle3D{{-1, 1, 0}, 1, {0, 0, 1}},
                              Circle3D{{-1, -1, 0}, 1, {0, 0, 1}}, Circle3D{{1, -1, 0}, 1, {0, 0, 1}}};
    CHECK(check_touching_coins(c).indeterminate);
  }
  SUBCASE("perturbation grows the residual") {
    // Four coins on the unit sphere touching cyclically: the cube face quadruple.
    const KoebePolyhedron p = build_koebe(cube_pattern(2));
    const SIsothermicSurface& s = p.surface;
    const SQuadGraph& g = *s.graph;
    int x = -1;
    for (int v = 0; v < g.vertex_count() && x < 0; ++v)
      if (s.is_sphere(v) && g.faces_around(v).size() == 4) x = v;
    REQUIRE(x >= 0);
    std::array<Circle3D, 4> coins;
    const auto fs = g.faces_around(x);
    for (int q = 0; q < 4; ++q) coins[q] = s.circle(g.face(fs[q])[(g.corner_index(fs[q], x) + 2) % 4]);
    CHECK(check_touching_coins(coins).residual <= 1e-8);
    double last = 0;
    for (double eps : {1e-4, 1e-3, 1e-2, 5e-2}) {
      auto moved = coins;
      moved[2].normal = rotate_about(moved[2].normal, moved[2].normal.unitOrthogonal(), eps);
      const double r = check_touching_coins(moved).residual;
      CHECK(r > last);
      last = r;
    }
  }
}

TEST_CASE("great circles are rejected") {
  SphericalPattern p = cube_pattern(2);
  const int v = p.adj.vertex_of_circle[0];
  p.radius[v] = std::numbers::pi / 2;
  const bool sphere_role = p.graph->label(v) == Label::SphereWhite;
  CHECK_THROWS_AS(build_koebe(p, sphere_role ? RoleChoice::AsLabeled : RoleChoice::Swapped), GeometryError);
}
