#include "dmin/minimal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace dmin {

double MinimalityCheck::max() const { return std::max({circle, normal_condition, plane_split}); }

bool is_interior_sphere_vertex(const SIsothermicSurface& s, int v) {
  const SQuadGraph& g = *s.graph;
  if (!s.is_sphere(v) || !s.finite(v) || s.radius[v] <= 0 || g.is_boundary_vertex(v) || g.degree(v) < 4) return false;
  for (int e : g.incident_edges(v)) {
    const int b = g.other_end(e, v);
    if (g.is_degenerate_edge(e) || !s.finite(b) || !s.is_contact(b)) return false;
  }
  return true;
}

namespace {

double distance_to_circle(const Circle3D& c, const Vec3& p) {
  const Vec3 q = p - c.center;
  const double h = q.dot(c.normal);
  return std::hypot(h, (q - h * c.normal).norm() - c.radius);
}

}  // namespace

MinimalityCheck check_minimal_condition(const SIsothermicSurface& s, int x) {
  const SQuadGraph& g = *s.graph;
  if (!s.is_sphere(x) || !s.finite(x)) throw GeometryError("minimality is tested at finite sphere vertices");
  const std::vector<int> nb = g.cyclic_neighbors(x);
  if (nb.size() < 4 || nb.size() % 2) throw GeometryError("minimality needs 2n >= 4 contacts around the vertex");
  const int n = static_cast<int>(nb.size());
  std::vector<Vec3> a(n);
  for (int j = 0; j < n; ++j) {
    if (!s.finite(nb[j])) throw GeometryError("contact at infinity around vertex " + std::to_string(x));
    a[j] = (j % 2 ? -1.0 : 1.0) * (s.position[nb[j]] - s.position[x]);
  }
  MinimalityCheck out;

  Vec3 mean = Vec3::Zero();
  for (const Vec3& v : a) mean += v;
  mean /= n;
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const Vec3& v : a) cov += (v - mean) * (v - mean).transpose();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  out.normal = eig.eigenvectors().col(0);
  const double h = mean.dot(out.normal);
  if (h < 0) out.normal = -out.normal;
  for (const Vec3& v : a) out.plane_split = std::max(out.plane_split, std::fabs(v.dot(out.normal) - std::fabs(h)));

  if (const auto c = circle_through(a[0], a[1], a[2]))
    for (int j = 3; j < n; ++j) out.circle = std::max(out.circle, distance_to_circle(*c, a[j]));
  else
    out.circle = std::numeric_limits<double>::infinity();

  const double scale = s.radius[x];
  if (std::fabs(h) > 1e-6 * scale) {
    Eigen::MatrixXd m(n, 3);
    for (int j = 0; j < n; ++j) m.row(j) = a[j].transpose();
    const Vec3 sol = m.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(Eigen::VectorXd::Ones(n));
    for (int j = 0; j < n; ++j) out.normal_condition = std::max(out.normal_condition, std::fabs(a[j].dot(sol) - 1.0) / sol.norm());
  } else {
    // Contacts on a great circle: a_j . N = 0 has no affine normalization.
    out.normal_condition = out.plane_split;
  }
  return out;
}

void assess_minimality(MinimalSurface& m) {
  const SIsothermicSurface& s = m.surface;
  const SQuadGraph& g = *s.graph;
  const int nv = g.vertex_count();
  const double diam = std::max(s.diameter(), 1e-300);
  m.vertex.assign(nv, {});
  m.checked.assign(nv, 0);
  m.hull_distance.assign(nv, 0.0);
  m.max_minimality = m.max_hull_distance = 0.0;
  m.interior_sphere_vertices = 0;
  for (int v = 0; v < nv; ++v) {
    if (is_interior_sphere_vertex(s, v)) {
      m.vertex[v] = check_minimal_condition(s, v);
      m.checked[v] = 1;
      ++m.interior_sphere_vertices;
      m.max_minimality = std::max(m.max_minimality, m.vertex[v].max() / diam);
    }
    if (!s.finite(v) || g.is_boundary_vertex(v) || g.degree(v) == 0) continue;
    std::vector<Vec3> pts;
    bool ok = true;
    for (int e : g.incident_edges(v)) {
      const int w = g.other_end(e, v);
      if (!s.finite(w) || g.is_degenerate_edge(e)) ok = false;
      else pts.push_back(s.position[w] - s.position[v]);
    }
    if (!ok) continue;
    m.hull_distance[v] = distance_origin_to_hull(pts) / diam;
    m.max_hull_distance = std::max(m.max_hull_distance, m.hull_distance[v]);
  }
}

MinimalSurface dualize_koebe_to_minimal(const KoebePolyhedron& k, const EdgeSigns& signs, int basepoint,
                                        bool normalize_signs) {
  MinimalSurface m;
  m.surface = dual_s_isothermic(k.surface, signs, basepoint, &m.dual, normalize_signs);
  assess_minimality(m);
  // Gauss map: the normal at a sphere vertex is the Koebe sphere's direction.
  for (int v = 0; v < m.surface.vertex_count(); ++v)
    if (m.checked[v])
      m.gauss_alignment =
          std::max(m.gauss_alignment, 1.0 - std::fabs(m.vertex[v].normal.dot(k.surface.position[v].normalized())));
  return m;
}

}  // namespace dmin
