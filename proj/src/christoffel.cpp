#include "dmin/christoffel.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include <Eigen/Geometry>

namespace dmin {

Vec3 dual_edge(const Vec3& delta, int sign) {
  const double n2 = delta.squaredNorm();
  if (n2 == 0.0) throw GeometryError("zero-length edge has an infinite dual edge");
  return (sign / n2) * delta;
}

DualizationResult dualize_mesh(const SQuadGraph& g, const std::vector<Vec3>& pos, const EdgeSigns& signs,
                               int basepoint, const std::map<int, Vec3>& ray_directions, double hard_cap,
                               bool normalize_signs) {
  if (!g.is_simply_connected()) throw GeometryError("dualization needs a simply connected quad-graph");
  if (static_cast<int>(pos.size()) != g.vertex_count() || signs.size() != g.edge_count())
    throw GeometryError("dualization inputs do not match the graph");
  const int nv = g.vertex_count();
  DualizationResult out;
  out.basepoint = basepoint;
  out.position.assign(nv, Vec3::Zero());
  out.at_infinity.assign(nv, 1);

  // Breadth-first tree over non-degenerate edges.
  std::vector<int> tree_edge(nv, -1);
  std::vector<int> order{basepoint};
  out.at_infinity[basepoint] = 0;
  for (size_t head = 0; head < order.size(); ++head) {
    const int v = order[head];
    for (int e : g.incident_edges(v)) {
      if (g.is_degenerate_edge(e)) continue;
      const int w = g.other_end(e, v);
      if (!out.at_infinity[w]) continue;
      out.at_infinity[w] = 0;
      tree_edge[w] = e;
      order.push_back(w);
    }
  }
  int flip = 1;
  if (normalize_signs && order.size() > 1 && signs[tree_edge[order[1]]] < 0) {
    flip = -1;
    out.signs_flipped = true;
  }
  auto dual_of = [&](int e, int from, int to) { return dual_edge(pos[to] - pos[from], flip * signs[e]); };

  for (size_t i = 1; i < order.size(); ++i) {
    const int w = order[i], e = tree_edge[w], v = g.other_end(e, w);
    out.position[w] = out.position[v] + dual_of(e, v, w);
  }
  out.base_image = out.position[basepoint];

  for (int v = 0; v < nv; ++v)
    if (out.at_infinity[v]) {
      bool degenerate_only = false;
      for (int e : g.incident_edges(v)) degenerate_only |= g.is_degenerate_edge(e);
      if (!degenerate_only) throw GeometryError("vertex " + std::to_string(v) + " is not reachable for dualization");
    }

  // Closure: co-tree edges and faces.
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto [a, b] = g.edge(e);
    if (g.is_degenerate_edge(e) || out.at_infinity[a] || out.at_infinity[b]) continue;
    if (tree_edge[a] == e || tree_edge[b] == e) continue;
    const double r = (out.position[b] - out.position[a] - dual_of(e, a, b)).norm();
    if (r > out.closure_residual) {
      out.closure_residual = r;
      out.worst_face = g.edge_faces(e)[0];
    }
  }
  for (int f = 0; f < g.face_count(); ++f) {
    const Face& fc = g.face(f);
    bool skip = false;
    Vec3 sum = Vec3::Zero();
    for (int i = 0; i < 4 && !skip; ++i) {
      const int a = fc[i], b = fc[(i + 1) % 4];
      const int e = *g.edge_id(a, b);
      if (g.is_degenerate_edge(e) || out.at_infinity[a] || out.at_infinity[b]) skip = true;
      else sum += dual_of(e, a, b);
    }
    if (!skip && sum.norm() > out.closure_residual) {
      out.closure_residual = sum.norm();
      out.worst_face = f;
    }
  }

  for (int e : g.degenerate_edges()) {
    auto [a, b] = g.edge(e);
    if (out.at_infinity[a]) std::swap(a, b);
    if (out.at_infinity[a] || !out.at_infinity[b]) continue;
    auto it = ray_directions.find(e);
    if (it == ray_directions.end()) throw GeometryError("no direction for degenerate edge " + std::to_string(e));
    out.rays.push_back({a, b, (flip * signs[e]) * it->second.normalized()});
  }

  Vec3 lo = Vec3::Constant(1e300), hi = Vec3::Constant(-1e300);
  for (int v = 0; v < nv; ++v)
    if (!out.at_infinity[v]) {
      lo = lo.cwiseMin(out.position[v]);
      hi = hi.cwiseMax(out.position[v]);
    }
  out.diameter = (hi - lo).norm();
  if (out.closure_residual > hard_cap * out.diameter) {
    std::ostringstream msg;
    msg << "dual closure residual " << out.closure_residual << " exceeds " << hard_cap << " x diameter at face "
        << out.worst_face << " (faces must be conformal squares)";
    throw GeometryError(msg.str());
  }
  return out;
}

std::vector<Vec2> dual_polygon(const std::vector<Vec2>& edges, const std::vector<double>& r) {
  const size_t n = edges.size();
  if (n == 0 || n % 2 != 0 || r.size() != n) throw GeometryError("dual polygon needs 2n edges and 2n touching radii");
  std::vector<Vec2> out(n);
  for (size_t j = 0; j < n; ++j) {
    const double rj = r[j], rn = r[(j + 1) % n];
    if (std::fabs(edges[j].norm() - (rj + rn)) > 1e-8 * (rj + rn))
      throw GeometryError("edge " + std::to_string(j) + " violates the inscribed-circle condition");
    // j is 0-based here, so (-1)^(j+1).
    out[j] = ((j % 2 == 0) ? -1.0 : 1.0) / (rj * rn) * edges[j];
  }
  return out;
}

std::map<int, Vec3> degenerate_edge_directions(const SIsothermicSurface& s) {
  const SQuadGraph& g = *s.graph;
  std::map<int, Vec3> out;
  for (int e : g.degenerate_edges()) {
    auto [u, w] = g.edge(e);
    if (!(s.is_sphere(w) && s.radius[w] == 0.0)) std::swap(u, w);
    int other = -1;
    for (int f : g.incident_edges(u)) {
      const int x = g.other_end(f, u);
      if (x != w && s.is_sphere(x) && s.radius[x] > 0) other = x;
    }
    if (other < 0) throw GeometryError("degenerate edge " + std::to_string(e) + " has no touching sphere to orient it");
    // Limit direction of u -> w as the sphere at w shrinks: continues the
    // line of centers through the contact.
    out[e] = (s.position[u] - s.position[other]).normalized();
  }
  return out;
}

SIsothermicSurface dual_s_isothermic(const SIsothermicSurface& s, const EdgeSigns& signs, int basepoint,
                                     DualizationResult* info, bool normalize_signs) {
  const SQuadGraph& g = *s.graph;
  DualizationResult d =
      dualize_mesh(g, s.position, signs, basepoint, degenerate_edge_directions(s), 1e-5, normalize_signs);
  SIsothermicSurface out;
  out.graph = s.graph;
  out.role = s.role;
  out.position = d.position;
  out.at_infinity = d.at_infinity;
  out.rays = d.rays;
  out.radius.assign(g.vertex_count(), 0.0);
  out.normal.assign(g.vertex_count(), Vec3::Zero());
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (s.is_contact(v) || out.at_infinity[v]) continue;
    double sum = 0.0;
    int n = 0;
    for (int e : g.incident_edges(v)) {
      const int b = g.other_end(e, v);
      if (out.at_infinity[b] || g.is_degenerate_edge(e)) continue;
      sum += (out.position[b] - out.position[v]).norm();
      ++n;
    }
    out.radius[v] = n ? sum / n : 0.0;
    if (s.is_circle(v))
      for (int f : g.faces_around(v)) {
        const int i = g.corner_index(f, v);
        const int b1 = g.face(f)[(i + 1) % 4], b2 = g.face(f)[(i + 3) % 4];
        if (out.at_infinity[b1] || out.at_infinity[b2]) continue;
        const Vec3 nrm = (out.position[b1] - out.position[v]).cross(out.position[b2] - out.position[v]);
        if (nrm.norm() > 0) {
          out.normal[v] = nrm.normalized();
          break;
        }
      }
  }
  if (info) *info = std::move(d);
  return out;
}

Registration register_similarity(const std::vector<Vec3>& from, const std::vector<Vec3>& to, bool rotate) {
  if (from.size() != to.size() || from.empty()) throw GeometryError("registration needs matching point sets");
  const int n = static_cast<int>(from.size());
  Eigen::Matrix3Xd a(3, n), b(3, n);
  for (int i = 0; i < n; ++i) {
    a.col(i) = from[i];
    b.col(i) = to[i];
  }
  Registration r;
  if (rotate) {
    const Eigen::Matrix4d t = Eigen::umeyama(a, b, true);
    const Eigen::Matrix3d sr = t.topLeftCorner<3, 3>();
    r.scale = std::cbrt(sr.determinant());
    r.rotation = sr / r.scale;
    r.translation = t.topRightCorner<3, 1>();
  } else {
    const Vec3 ma = a.rowwise().mean(), mb = b.rowwise().mean();
    const Eigen::Matrix3Xd ca = a.colwise() - ma, cb = b.colwise() - mb;
    r.scale = (ca.array() * cb.array()).sum() / ca.squaredNorm();
    r.translation = mb - r.scale * ma;
  }
  for (int i = 0; i < n; ++i) r.max_deviation = std::max(r.max_deviation, (r.apply(from[i]) - to[i]).norm());
  return r;
}

}  // namespace dmin
