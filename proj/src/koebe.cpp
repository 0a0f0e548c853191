#include "dmin/koebe.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dmin {

bool SIsothermicSurface::face_finite(int f) const {
  for (int v : graph->face(f))
    if (at_infinity[v]) return false;
  return true;
}

double SIsothermicSurface::diameter() const {
  Vec3 lo = Vec3::Constant(1e300), hi = Vec3::Constant(-1e300);
  bool any = false;
  for (int v = 0; v < vertex_count(); ++v) {
    if (at_infinity[v]) continue;
    lo = lo.cwiseMin(position[v]);
    hi = hi.cwiseMax(position[v]);
    any = true;
  }
  return any ? (hi - lo).norm() : 0.0;
}

double SurfaceResiduals::max() const {
  return std::max({sphere_tangency, contact_on_sphere, contact_on_circle, circle_sphere_angle, kite_planarity,
                   kite_cross_ratio});
}

KoebePolyhedron build_koebe(const SphericalPattern& pattern, RoleChoice choice) {
  const SQuadGraph& g = *pattern.graph;
  const int nv = g.vertex_count();
  SIsothermicSurface s;
  s.graph = pattern.graph;
  s.role.resize(nv);
  s.position.assign(nv, Vec3::Zero());
  s.radius.assign(nv, 0.0);
  s.normal.assign(nv, Vec3::Zero());
  s.at_infinity.assign(nv, 0);
  for (int v = 0; v < nv; ++v) {
    Label l = g.label(v);
    if (choice == RoleChoice::Swapped && l != Label::Black)
      l = l == Label::SphereWhite ? Label::CircleWhite : Label::SphereWhite;
    s.role[v] = l;
    const Vec3& u = pattern.point[v];
    const double r = pattern.radius[v];
    switch (l) {
      case Label::Black:
        s.position[v] = u;
        break;
      case Label::SphereWhite: {
        const double c = std::cos(r);
        if (std::fabs(c) < 1e-12)
          throw GeometryError("sphere vertex " + std::to_string(v) + " carries a great circle; its orthogonal sphere is a plane");
        s.position[v] = u / c;
        s.radius[v] = std::fabs(std::tan(r));
        break;
      }
      case Label::CircleWhite:
        s.position[v] = std::cos(r) * u;
        s.radius[v] = std::sin(r);
        s.normal[v] = u;
        break;
    }
  }
  return KoebePolyhedron{std::move(s)};
}

double circle_sphere_cosine(const Circle3D& c, const Sphere3D& s) {
  const double d2 = (c.center - s.center).squaredNorm();
  return (d2 - c.radius * c.radius - s.radius * s.radius) / (2 * c.radius * s.radius);
}

namespace {

double distance_to_circle(const Circle3D& c, const Vec3& p) {
  const Vec3 q = p - c.center;
  const double h = q.dot(c.normal);
  const double inplane = (q - h * c.normal).norm();
  return std::hypot(h, inplane - c.radius);
}

// Sphere-role neighbors of a contact vertex with positive radius.
std::vector<int> sphere_neighbors(const SIsothermicSurface& s, int b) {
  std::vector<int> out;
  const SQuadGraph& g = *s.graph;
  for (int e : g.incident_edges(b)) {
    const int w = g.other_end(e, b);
    if (s.is_sphere(w) && s.finite(w) && s.radius[w] > 0) out.push_back(w);
  }
  return out;
}

}  // namespace

SurfaceResiduals s_isothermic_residuals(const SIsothermicSurface& s) {
  SurfaceResiduals r;
  const SQuadGraph& g = *s.graph;
  const double scale = std::max(s.diameter(), 1e-300);
  for (int b = 0; b < g.vertex_count(); ++b) {
    if (!s.is_contact(b) || !s.finite(b)) continue;
    const auto sp = sphere_neighbors(s, b);
    for (int w : sp) r.contact_on_sphere = std::max(r.contact_on_sphere, std::fabs((s.position[b] - s.position[w]).norm() - s.radius[w]) / scale);
    if (sp.size() == 2) {
      const double d = (s.position[sp[0]] - s.position[sp[1]]).norm();
      r.sphere_tangency = std::max(r.sphere_tangency, std::fabs(d - s.radius[sp[0]] - s.radius[sp[1]]) / scale);
    }
    for (int e : g.incident_edges(b)) {
      const int w = g.other_end(e, b);
      if (s.is_circle(w) && s.finite(w))
        r.contact_on_circle = std::max(r.contact_on_circle, distance_to_circle(s.circle(w), s.position[b]) / scale);
    }
  }
  for (int f = 0; f < g.face_count(); ++f) {
    if (!s.face_finite(f)) continue;
    const Face& fc = g.face(f);
    int ci = -1, si = -1;
    for (int i = 0; i < 4; ++i) {
      if (s.is_circle(fc[i])) ci = i;
      if (s.is_sphere(fc[i])) si = i;
    }
    if (ci < 0 || si < 0 || s.radius[fc[si]] <= 0 || s.radius[fc[ci]] <= 0) continue;
    ++r.faces_checked;
    r.circle_sphere_angle =
        std::max(r.circle_sphere_angle, std::fabs(circle_sphere_cosine(s.circle(fc[ci]), s.sphere(fc[si]))));
    const Vec3 &p0 = s.position[fc[0]], &p1 = s.position[fc[1]], &p2 = s.position[fc[2]], &p3 = s.position[fc[3]];
    const Vec3 n = (p1 - p0).cross(p2 - p0);
    const double kite_size = std::max({(p1 - p0).norm(), (p2 - p1).norm(), (p3 - p2).norm(), (p0 - p3).norm()});
    if (n.norm() > 0) r.kite_planarity = std::max(r.kite_planarity, std::fabs((p3 - p0).dot(n.normalized())) / kite_size);
    r.kite_cross_ratio = std::max(r.kite_cross_ratio, std::abs(cross_ratio_space(p0, p1, p2, p3) + 1.0));
  }
  return r;
}

KoebeResiduals koebe_residuals(const KoebePolyhedron& k) {
  KoebeResiduals r;
  const SIsothermicSurface& s = k.surface;
  const SQuadGraph& g = *s.graph;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (s.is_sphere(v)) {
      const double d2 = s.position[v].squaredNorm();
      r.sphere_orthogonality = std::max(r.sphere_orthogonality, std::fabs(d2 - 1.0 - s.radius[v] * s.radius[v]) / std::max(1.0, d2));
    } else if (s.is_circle(v)) {
      const Vec3& c = s.position[v];
      r.circles_on_midsphere = std::max(r.circles_on_midsphere, std::fabs(c.squaredNorm() + s.radius[v] * s.radius[v] - 1.0));
      r.circles_on_midsphere = std::max(r.circles_on_midsphere, s.normal[v].cross(c).norm());
    } else {
      const auto sp = sphere_neighbors(s, v);
      if (sp.size() != 2) continue;
      const Vec3 a = s.position[sp[0]], b = s.position[sp[1]];
      const double t = std::clamp(-a.dot(b - a) / (b - a).squaredNorm(), 0.0, 1.0);
      const Vec3 closest = a + t * (b - a);
      r.edge_tangency = std::max({r.edge_tangency, std::fabs(closest.norm() - 1.0), (closest - s.position[v]).norm()});
    }
  }
  r.surface = s_isothermic_residuals(s);
  return r;
}

KiteMesh central_extension(const SIsothermicSurface& s) { return KiteMesh{s.graph, s.position}; }

namespace {

// Touching point of two tangent circles: foot of c1's center on the common tangent line.
Vec3 touching_point(const Circle3D& a, const Circle3D& b) {
  const Vec3 d = a.normal.cross(b.normal);
  if (d.norm() < 1e-9) {
    const Vec3 dir = (b.center - a.center).normalized();
    return a.center + a.radius * dir;
  }
  // Point on both planes closest to the origin.
  Eigen::Matrix<double, 2, 3> m;
  m.row(0) = a.normal.transpose();
  m.row(1) = b.normal.transpose();
  const Eigen::Vector2d rhs(a.normal.dot(a.center), b.normal.dot(b.center));
  const Vec3 x0 = m.transpose() * (m * m.transpose()).inverse() * rhs;
  const Vec3 u = d.normalized();
  return x0 + (a.center - x0).dot(u) * u;
}

}  // namespace

TouchingCoinsResult check_touching_coins(const std::array<Circle3D, 4>& c) {
  std::array<Vec3, 4> p;
  for (int i = 0; i < 4; ++i) p[i] = touching_point(c[i], c[(i + 1) % 4]);
  TouchingCoinsResult out;
  double scale = 0.0;
  for (int i = 0; i < 4; ++i) scale = std::max(scale, (p[i] - p[(i + 1) % 4]).norm());
  const double vol = std::fabs((p[1] - p[0]).dot((p[2] - p[0]).cross(p[3] - p[0])));
  std::optional<Sphere3D> sphere;
  if (vol > 1e-9 * scale * scale * scale) {
    sphere = sphere_through(p[0], p[1], p[2], p[3]);
  } else if (const auto k = circle_through(p[0], p[1], p[2])) {
    // Concyclic contacts: take the sphere of the pencil through them that is
    // orthogonal to the first circle.
    const Vec3 off = c[0].center - k->center;
    const double den = 2 * k->normal.dot(off);
    if (std::fabs(den) > 1e-9 * scale) {
      const double lambda = (off.squaredNorm() - c[0].radius * c[0].radius - k->radius * k->radius) / den;
      sphere = Sphere3D{k->center + lambda * k->normal, std::sqrt(k->radius * k->radius + lambda * lambda)};
    }
  }
  if (!sphere) {
    out.indeterminate = true;
    return out;
  }
  for (const Circle3D& ci : c) out.residual = std::max(out.residual, std::fabs(circle_sphere_cosine(ci, *sphere)));
  return out;
}

double touching_coins_residual(const SIsothermicSurface& s, int* checked) {
  const SQuadGraph& g = *s.graph;
  double worst = 0.0;
  int count = 0;
  for (int x = 0; x < g.vertex_count(); ++x) {
    if (!s.is_sphere(x) || g.is_boundary_vertex(x)) continue;
    const auto fs = g.faces_around(x);
    if (fs.size() != 4) continue;
    std::array<Circle3D, 4> cs;
    bool ok = true;
    for (int q = 0; q < 4; ++q) {
      const Face& fc = g.face(fs[q]);
      const int w = fc[(g.corner_index(fs[q], x) + 2) % 4];
      if (!s.is_circle(w) || !s.finite(w)) ok = false;
      else cs[q] = s.circle(w);
    }
    if (!ok) continue;
    const auto res = check_touching_coins(cs);
    if (res.indeterminate) continue;
    worst = std::max(worst, res.residual);
    ++count;
  }
  if (checked) *checked = count;
  return worst;
}

}  // namespace dmin
