#include <algorithm>
#include <cmath>
#include <deque>

#include "dmin/minimal.hpp"

namespace dmin {

AssociatedFamilyMember associated_family_geometric(const KoebePolyhedron& k, const EdgeSigns& signs, double phi,
                                                   int basepoint, bool normalize_signs) {
  const SIsothermicSurface& ks = k.surface;
  const SQuadGraph& g = *ks.graph;
  const int nv = g.vertex_count();
  // The untwisted dual fixes the sign normalization and the base point image.
  const DualizationResult ref = dualize_mesh(g, ks.position, signs, basepoint, degenerate_edge_directions(ks), 1e-5, normalize_signs);
  const int flip = ref.signs_flipped ? -1 : 1;

  auto usable = [&](int e) {
    if (g.is_degenerate_edge(e)) return false;
    const auto [a, b] = g.edge(e);
    const int x = ks.is_sphere(a) ? a : b, y = g.other_end(e, x);
    return ks.is_sphere(x) && ks.is_contact(y) && ks.radius[x] > 0 && !ref.at_infinity[x] && !ref.at_infinity[y];
  };
  // Dual of the rotated edge from `from` to `to`.
  auto rotated_dual = [&](int e, int from, int to) {
    const int x = ks.is_sphere(from) ? from : to, y = g.other_end(e, x);
    const Vec3 l = rotate_about(ks.position[y] - ks.position[x], ks.position[y].normalized(), phi);
    const Vec3 d = (flip * signs[e]) * l / (ks.radius[x] * ks.radius[x]);
    return from == x ? d : Vec3(-d);
  };

  AssociatedFamilyMember out;
  out.phi = phi;
  SIsothermicSurface& s = out.surface;
  s.graph = ks.graph;
  s.role = ks.role;
  s.position.assign(nv, Vec3::Zero());
  s.radius.assign(nv, 0.0);
  s.normal.assign(nv, Vec3::Zero());
  s.at_infinity.assign(nv, 1);

  int root = -1;
  for (int v = 0; v < nv && root < 0; ++v)
    if (ks.is_sphere(v) && !ref.at_infinity[v] && ks.radius[v] > 0) root = v;
  if (root < 0) throw GeometryError("no finite sphere vertex to start the associated family");
  s.position[root] = ref.position[root];
  s.at_infinity[root] = 0;
  std::vector<int> tree(nv, -1);
  std::deque<int> queue{root};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int e : g.incident_edges(v)) {
      if (!usable(e)) continue;
      const int w = g.other_end(e, v);
      if (!s.at_infinity[w]) continue;
      s.position[w] = s.position[v] + rotated_dual(e, v, w);
      s.at_infinity[w] = 0;
      tree[w] = e;
      queue.push_back(w);
    }
  }
  for (int v = 0; v < nv; ++v)
    if (ks.is_sphere(v) && !s.at_infinity[v]) s.radius[v] = 1.0 / ks.radius[v];

  double worst = 0.0;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!usable(e)) continue;
    const auto [a, b] = g.edge(e);
    if (tree[a] == e || tree[b] == e || s.at_infinity[a] || s.at_infinity[b]) continue;
    worst = std::max(worst, (s.position[b] - s.position[a] - rotated_dual(e, a, b)).norm());
  }

  for (int c = 0; c < nv; ++c) {
    if (!ks.is_circle(c)) continue;
    std::vector<Vec3> pts;
    bool all = true;
    for (int e : g.incident_edges(c)) {
      const int y = g.other_end(e, c);
      if (s.at_infinity[y]) all = false;
      else pts.push_back(s.position[y]);
    }
    if (!all || pts.size() < 3) continue;
    const auto circ = circle_through(pts[0], pts[1], pts[2]);
    if (!circ) continue;
    double off = 0.0;
    for (size_t i = 3; i < pts.size(); ++i) {
      const Vec3 q = pts[i] - circ->center;
      const double h = q.dot(circ->normal);
      off = std::max(off, std::hypot(h, (q - h * circ->normal).norm() - circ->radius));
    }
    if (off > 1e-7 * circ->radius) continue;
    s.position[c] = circ->center;
    s.radius[c] = circ->radius;
    s.normal[c] = circ->normal;
    s.at_infinity[c] = 0;
    ++out.circles;
  }
  const double diam = std::max(s.diameter(), 1e-300);
  out.closure_residual = worst / diam;
  return out;
}

}  // namespace dmin
