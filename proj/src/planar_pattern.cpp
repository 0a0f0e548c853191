#include "dmin/planar_pattern.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dmin {

int PlanarPattern::id(int i, int j) const {
  if (i < i0 || i > i1 || j < j0 || j > j1) throw GeometryError("lattice index outside the pattern window");
  return (i - i0) * (j1 - j0 + 1) + (j - j0);
}

namespace {

PlanarPattern from_grid(GridPatch&& patch) {
  PlanarPattern p;
  p.index = std::move(patch.index);
  p.i0 = patch.i0;
  p.i1 = patch.i1;
  p.j0 = patch.j0;
  p.j1 = patch.j1;
  p.graph = std::make_shared<const SQuadGraph>(std::move(patch.graph));
  p.center.assign(p.graph->vertex_count(), Complex(0.0));
  p.radius.assign(p.graph->vertex_count(), 0.0);
  return p;
}

// The two touching pairs around a black lattice vertex, when present.
std::vector<std::array<int, 2>> touching_pairs(const PlanarPattern& p, int b) {
  const auto [i, j] = p.index[b];
  std::vector<std::array<int, 2>> out;
  auto inside = [&](int a, int c) { return a >= p.i0 && a <= p.i1 && c >= p.j0 && c <= p.j1; };
  if (inside(i - 1, j) && inside(i + 1, j)) out.push_back({p.id(i - 1, j), p.id(i + 1, j)});
  if (inside(i, j - 1) && inside(i, j + 1)) out.push_back({p.id(i, j - 1), p.id(i, j + 1)});
  return out;
}

}  // namespace

PlanarResiduals planar_residuals(const PlanarPattern& p) {
  PlanarResiduals res;
  const SQuadGraph& g = *p.graph;
  for (int b = 0; b < g.vertex_count(); ++b) {
    if (!g.is_black(b)) continue;
    for (const auto& [u, w] : touching_pairs(p, b)) {
      const Complex d = p.center[w] - p.center[u];
      res.tangency = std::max(res.tangency, std::fabs(std::abs(d) - p.radius[u] - p.radius[w]));
      const Complex touch = p.center[u] + p.radius[u] * d / std::abs(d);
      res.contact_offset = std::max(res.contact_offset, std::abs(touch - p.center[b]));
      ++res.pairs;
    }
  }
  for (const Face& f : g.faces()) {
    int w[2], n = 0;
    for (int v : f)
      if (g.is_white(v) && n < 2) w[n++] = v;
    if (n != 2) continue;
    const double r1 = p.radius[w[0]], r2 = p.radius[w[1]];
    res.orthogonality =
        std::max(res.orthogonality, std::fabs(std::norm(p.center[w[0]] - p.center[w[1]]) - r1 * r1 - r2 * r2) / (r1 * r2));
  }
  return res;
}

PlanarPattern enneper_grid_pattern(int m, int n, double r) {
  if (!(r > 0)) throw GeometryError("circle radius must be positive");
  PlanarPattern p = from_grid(make_zsquare_patch(m, n));
  for (int v = 0; v < p.graph->vertex_count(); ++v) {
    p.center[v] = r * Complex(p.index[v][0], p.index[v][1]);
    if (p.graph->is_white(v)) p.radius[v] = r;
  }
  return p;
}

SexpParameters sexp_parameters(int N) {
  if (N < 3) throw GeometryError("S-Exp needs at least 3 circles per half period");
  SexpParameters s;
  s.rho = std::numbers::pi / N;
  s.alpha = std::atanh(0.5 * std::abs(1.0 - std::polar(1.0, 2 * s.rho)));
  return s;
}

PlanarPattern sexp_pattern(int N, int n0, int n1, int m0, int m1) {
  const SexpParameters sp = sexp_parameters(N);
  PlanarPattern p = from_grid(make_zsquare_grid(n0, n1, m0, m1));
  const SQuadGraph& g = *p.graph;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_white(v)) continue;
    const auto [n, m] = p.index[v];
    p.center[v] = std::exp(Complex(sp.alpha * n, sp.rho * m));
    p.radius[v] = std::sin(sp.rho) * std::abs(p.center[v]);
  }
  for (int b = 0; b < g.vertex_count(); ++b) {
    if (!g.is_black(b)) continue;
    const auto pairs = touching_pairs(p, b);
    if (!pairs.empty()) {
      const auto [u, w] = pairs.front();
      const Complex d = p.center[w] - p.center[u];
      p.center[b] = p.center[u] + p.radius[u] * d / std::abs(d);
      continue;
    }
    // Window corner: intersect the two orthogonal circles and keep the point
    // nearer the lattice value.
    std::vector<int> nb;
    for (int e : g.incident_edges(b)) nb.push_back(g.other_end(e, b));
    if (nb.size() != 2) throw GeometryError("black vertex without a touching pair; widen the window");
    const Complex c1 = p.center[nb[0]], c2 = p.center[nb[1]];
    const double r1 = p.radius[nb[0]], r2 = p.radius[nb[1]], d = std::abs(c2 - c1);
    const double along = (d * d + r1 * r1 - r2 * r2) / (2 * d);
    const double across = std::sqrt(std::max(0.0, r1 * r1 - along * along));
    const Complex u = (c2 - c1) / d;
    const Complex q1 = c1 + u * Complex(along, across), q2 = c1 + u * Complex(along, -across);
    const auto [n, m] = p.index[b];
    const Complex nominal = std::exp(Complex(sp.alpha * n, sp.rho * m));
    p.center[b] = std::abs(q1 - nominal) < std::abs(q2 - nominal) ? q1 : q2;
  }
  return p;
}

SphericalPattern project_to_sphere(const PlanarPattern& p) {
  SphericalPattern out;
  out.graph = p.graph;
  const SQuadGraph& g = *p.graph;
  out.adj = CircleAdjacency::from_graph(g);
  out.point.assign(g.vertex_count(), Vec3::Zero());
  out.radius.assign(g.vertex_count(), 0.0);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.is_black(v)) {
      out.point[v] = stereographic_project(p.center[v]).vec();
      continue;
    }
    const Complex c = p.center[v];
    const double r = p.radius[v];
    std::array<Vec3, 3> q;
    for (int k = 0; k < 3; ++k) q[k] = stereographic_project(c + std::polar(r, 2.0 * std::numbers::pi * k / 3)).vec();
    const auto img = circle_through(q[0], q[1], q[2]);
    if (!img) throw GeometryError("degenerate circle image under stereographic projection");
    Vec3 n = img->normal;
    double h = n.dot(img->center);
    if (n.dot(stereographic_project(c).vec()) < h) {
      n = -n;
      h = -h;
    }
    out.point[v] = n;
    out.radius[v] = std::acos(std::clamp(h, -1.0, 1.0));
  }
  return out;
}

}  // namespace dmin
