#include "dmin/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dmin {

namespace {

void finish(SurfaceModel& s) {
  s.touching_coins = touching_coins_residual(s.koebe.surface, &s.touching_coins_checked);
}

// Pattern on a derived graph whose vertices project to `base` vertices.
SphericalPattern pulled_back(const SphericalPattern& base, const SQuadGraph& g, const std::vector<int>& to_base) {
  SphericalPattern out;
  out.graph = std::make_shared<const SQuadGraph>(g);
  out.adj = CircleAdjacency::from_graph(g);
  out.point.resize(g.vertex_count());
  out.radius.resize(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    out.point[v] = base.point[to_base[v]];
    out.radius[v] = base.radius[to_base[v]];
  }
  return out;
}

SphericalPattern solve_and_layout(const SQuadGraph& g, std::optional<SolveResult>& solve) {
  const CircleAdjacency adj = CircleAdjacency::from_graph(g);
  const SphericalFunctional fn(adj, default_targets(g, adj));
  solve = solve_pattern(fn, Eigen::VectorXd::Zero(fn.size()));
  return normalize_pattern(layout_pattern(g, solve->rho));
}

// Distinct nonzero differences between the dual images of vertices that the
// cut separated.
std::vector<Vec3> cut_periods(const SIsothermicSurface& s, const std::vector<int>& source, int source_count) {
  std::vector<std::vector<int>> copies(source_count);
  for (int v = 0; v < s.vertex_count(); ++v)
    if (s.finite(v)) copies[source[v]].push_back(v);
  const double tol = 1e-6 * std::max(s.diameter(), 1e-300);
  std::vector<Vec3> out;
  for (const auto& c : copies)
    for (size_t i = 1; i < c.size(); ++i) {
      Vec3 d = s.position[c[i]] - s.position[c[0]];
      if (d.norm() < tol) continue;
      // One representative per +/- pair.
      for (int k = 2; k >= 0; --k)
        if (std::fabs(d[k]) > tol) {
          if (d[k] < 0) d = -d;
          break;
        }
      bool seen = false;
      for (const Vec3& p : out) seen |= (p - d).norm() < tol;
      if (!seen) out.push_back(d);
    }
  return out;
}

}  // namespace

SurfaceModel planar_route(const PlanarPattern& p, const std::string& kind) {
  SurfaceModel s;
  s.kind = kind;
  s.planar = p;
  s.pattern = project_to_sphere(p);
  s.koebe = build_koebe(s.pattern);
  s.signs = assign_edge_signs(*p.graph);
  // Signs as assigned ('+' along the first lattice direction) keep the
  // orientation of the Weierstrass formula.
  s.minimal = dualize_koebe_to_minimal(s.koebe, s.signs, 0, false);
  s.source_vertex.resize(p.graph->vertex_count());
  for (int v = 0; v < p.graph->vertex_count(); ++v) s.source_vertex[v] = v;
  finish(s);
  return s;
}

SurfaceModel make_enneper(int n) {
  if (n < 2) throw GeometryError("Enneper needs n >= 2");
  SurfaceModel s = planar_route(enneper_grid_pattern(n, n, 1.0 / (n * std::numbers::sqrt2)), "enneper");
  s.parameters["n"] = n;
  return s;
}

SurfaceModel make_catenoid(int N, int rows) {
  if (N < 3 || rows < 1) throw GeometryError("catenoid needs N >= 3 and rows >= 1");
  const PlanarPattern p = sexp_pattern(N, -rows, rows, 0, 2 * N);
  SurfaceModel s = planar_route(p, "catenoid");
  s.parameters["N"] = N;
  s.parameters["rows"] = rows;
  const SIsothermicSurface& f = s.minimal.surface;
  double worst = 0.0;
  for (int i = -rows; i <= rows; ++i) {
    const int a = p.id(i, 0), b = p.id(i, 2 * N);
    if (f.finite(a) && f.finite(b)) worst = std::max(worst, (f.position[a] - f.position[b]).norm());
  }
  s.ring_closure = worst / f.diameter();
  return s;
}

SurfaceModel make_schwarz_p(int m, int n, int k) {
  const RefinedCube cube = make_refined_cube(m, n, k);
  SurfaceModel s;
  s.kind = "schwarz-p";
  s.parameters = {{"m", m}, {"n", n}, {"k", k}};
  const SphericalPattern base = solve_and_layout(cube.graph, s.solve);
  const DoubleCover cover = make_branched_double_cover(cube.graph, cube.corners);
  const DiskCut disk = cut_to_disk(cover.graph);
  std::vector<int> to_base(disk.graph.vertex_count());
  for (int v = 0; v < disk.graph.vertex_count(); ++v) to_base[v] = cover.projection[disk.projection[v]];
  s.pattern = pulled_back(base, disk.graph, to_base);
  s.koebe = build_koebe(s.pattern);
  s.signs = assign_edge_signs(disk.graph);
  s.minimal = dualize_koebe_to_minimal(s.koebe, s.signs);
  s.source_vertex = disk.projection;
  s.periods = cut_periods(s.minimal.surface, s.source_vertex, cover.graph.vertex_count());
  finish(s);
  return s;
}

SurfaceModel make_scherk(int m, int n, double truncation) {
  if (!(truncation > 0)) throw GeometryError("ray truncation must be positive");
  const ScherkGraph sg = make_scherk_graph(m, n);
  SurfaceModel s;
  s.kind = "scherk";
  s.parameters = {{"m", m}, {"n", n}, {"truncation", truncation}};
  const SphericalPattern base = solve_and_layout(sg.base.graph, s.solve);
  const SQuadGraph& full = sg.graph;

  // The inserted sphere vertices carry radius 0 at their contact point.
  SphericalPattern whole = pulled_back(base, full, sg.projection);
  for (int w : sg.end_vertices) whole.radius[w] = 0.0;
  const KoebePolyhedron whole_koebe = build_koebe(whole);
  const EdgeSigns whole_signs = assign_edge_signs(full);
  const auto ray_dirs = degenerate_edge_directions(whole_koebe.surface);

  std::vector<int> faces;
  for (int f = 0; f < full.face_count(); ++f) {
    bool touches_end = false;
    for (int v : full.face(f)) touches_end |= std::find(sg.end_vertices.begin(), sg.end_vertices.end(), v) != sg.end_vertices.end();
    if (!touches_end) faces.push_back(f);
  }
  const DiskCut disk = cut_to_disk(full, faces);
  s.pattern = pulled_back(whole, disk.graph, disk.projection);
  s.koebe = build_koebe(s.pattern);
  std::vector<std::int8_t> sv(disk.graph.edge_count());
  for (int e = 0; e < disk.graph.edge_count(); ++e) {
    const auto [a, b] = disk.graph.edge(e);
    sv[e] = static_cast<std::int8_t>(whole_signs[*full.edge_id(disk.projection[a], disk.projection[b])]);
  }
  s.signs = EdgeSigns(std::move(sv));
  s.minimal = dualize_koebe_to_minimal(s.koebe, s.signs);
  const int flip = s.minimal.dual.signs_flipped ? -1 : 1;

  for (const auto& [e, dir] : ray_dirs) {
    auto [u, w] = full.edge(e);
    if (std::find(sg.end_vertices.begin(), sg.end_vertices.end(), u) != sg.end_vertices.end()) std::swap(u, w);
    for (int d = 0; d < disk.graph.vertex_count(); ++d)
      if (disk.projection[d] == u) s.minimal.surface.rays.push_back({d, -1, (flip * whole_signs[e]) * dir});
  }
  for (int w : sg.end_vertices) s.end_normals.push_back(whole.point[w]);
  s.source_vertex = disk.projection;
  s.periods = cut_periods(s.minimal.surface, s.source_vertex, full.vertex_count());
  finish(s);
  return s;
}

Vec3 smooth_weierstrass(SmoothFamily family, Complex z) {
  const Complex i(0.0, 1.0);
  if (family == SmoothFamily::Enneper) {
    const Complex z3 = z * z * z;
    return {(z - z3 / 3.0).real(), (i * (z + z3 / 3.0)).real(), (z * z).real()};
  }
  return {(-2.0 * std::cosh(z)).real(), (2.0 * i * std::sinh(z)).real(), (2.0 * z).real()};
}

}  // namespace dmin
