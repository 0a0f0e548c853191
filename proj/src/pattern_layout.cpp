#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "dmin/pattern.hpp"

namespace dmin {

using Eigen::VectorXd;

Circle3D SphericalPattern::circle(int v) const {
  Circle3D c;
  c.center = std::cos(radius[v]) * point[v];
  c.radius = std::sin(radius[v]);
  c.normal = point[v];
  return c;
}

VectorXd SphericalPattern::rho() const {
  VectorXd r(adj.size());
  for (int c = 0; c < adj.size(); ++c) r[c] = rho_from_radius(radius[adj.vertex_of_circle[c]]);
  return r;
}

PatternResiduals pattern_residuals(const SphericalPattern& p) {
  PatternResiduals res;
  const SQuadGraph& g = *p.graph;
  for (const Face& f : g.faces()) {
    int w[2], nw = 0;
    for (int v : f)
      if (g.is_white(v) && nw < 2) w[nw++] = v;
    if (nw != 2) continue;
    const double cj = std::cos(p.radius[w[0]]), ck = std::cos(p.radius[w[1]]);
    res.orthogonality = std::max(res.orthogonality, std::fabs(p.point[w[0]].dot(p.point[w[1]]) - cj * ck));
    for (int b : f) {
      if (g.is_white(b)) continue;
      for (int v : w) res.incidence = std::max(res.incidence, std::fabs(p.point[v].dot(p.point[b]) - std::cos(p.radius[v])));
      const Vec3 t0 = p.circle(w[0]).tangent_at(p.point[b]);
      const Vec3 t1 = p.circle(w[1]).tangent_at(p.point[b]);
      res.tangent_angle = std::max(res.tangent_angle, std::fabs(t0.dot(t1)));
    }
  }
  return res;
}

SphericalPattern layout_pattern(const SQuadGraph& g, const VectorXd& rho, double tol) {
  SphericalPattern pat;
  pat.graph = std::make_shared<const SQuadGraph>(g);
  pat.adj = CircleAdjacency::from_graph(g);
  if (rho.size() != pat.adj.size()) throw PatternError("radius vector size does not match the circle count");
  const int nv = g.vertex_count();
  pat.point.assign(nv, Vec3::Zero());
  pat.radius.assign(nv, 0.0);
  std::vector<bool> placed(nv, false), done(nv, false);
  for (int c = 0; c < pat.adj.size(); ++c) pat.radius[pat.adj.vertex_of_circle[c]] = radius_from_rho(rho[c]);
  if (pat.adj.size() == 0) return pat;

  double mismatch = 0.0;
  auto put = [&](int v, const Vec3& x) {
    if (placed[v]) {
      mismatch = std::max(mismatch, (pat.point[v] - x).norm());
    } else {
      pat.point[v] = x;
      placed[v] = true;
    }
  };

  const int seed = pat.adj.vertex_of_circle[0];
  put(seed, Vec3(0, 0, -1));
  std::deque<int> queue{seed};
  bool seeded_contact = false;

  while (!queue.empty()) {
    const int w = queue.front();
    queue.pop_front();
    if (done[w]) continue;
    done[w] = true;
    const Vec3 u = pat.point[w];
    const double r = pat.radius[w];
    const std::vector<int> fs = g.faces_around(w);
    if (fs.empty()) continue;
    const int nf = static_cast<int>(fs.size());

    struct Corner {
      int a, k, b;
      double phi;
    };
    std::vector<Corner> corners(nf);
    for (int q = 0; q < nf; ++q) {
      const Face& fc = g.face(fs[q]);
      const int i = g.corner_index(fs[q], w);
      const int k = fc[(i + 2) % 4];
      corners[q] = {fc[(i + 1) % 4], k, fc[(i + 3) % 4],
                    napier_half_angle(rho[pat.adj.circle_of_vertex[w]], rho[pat.adj.circle_of_vertex[k]])};
    }

    // Frame at u from a known contact (or the fixed seed azimuth).
    int start = -1;
    Vec3 e1;
    for (int q = 0; q < nf && start < 0; ++q)
      if (placed[corners[q].a]) {
        start = q;
        const Vec3 x = pat.point[corners[q].a];
        e1 = (x - x.dot(u) * u).normalized();
      }
    if (start < 0) {
      if (seeded_contact) throw PatternError("layout reached a circle without a placed contact");
      seeded_contact = true;
      start = 0;
      e1 = Vec3(1, 0, 0);
      e1 = (e1 - e1.dot(u) * u).normalized();
    }
    const Vec3 e2 = u.cross(e1);
    auto on_circle = [&](double theta) {
      return Vec3(std::cos(r) * u + std::sin(r) * (std::cos(theta) * e1 + std::sin(theta) * e2));
    };
    auto place_face = [&](const Corner& c, double theta_a) {
      put(c.a, on_circle(theta_a));
      put(c.b, on_circle(theta_a + 2 * c.phi));
      const double mid = theta_a + c.phi;
      const Vec3 t = std::cos(mid) * e1 + std::sin(mid) * e2;
      const double cd = std::cos(r) * std::cos(pat.radius[c.k]);
      const double sd = std::sqrt(std::max(0.0, 1.0 - cd * cd));
      put(c.k, (cd * u + sd * t).normalized());
      if (!done[c.k]) queue.push_back(c.k);
    };

    const bool closed = !g.is_boundary_vertex(w);
    double theta = 0.0;
    for (int step = 0; step < nf; ++step) {
      const int q = (start + step) % nf;
      if (!closed && q < start) break;
      place_face(corners[q], theta);
      theta += 2 * corners[q].phi;
    }
    theta = 0.0;
    if (!closed)
      for (int q = start - 1; q >= 0; --q) {
        theta -= 2 * corners[q].phi;
        place_face(corners[q], theta);
      }
  }

  for (int v = 0; v < nv; ++v)
    if (!placed[v] && g.degree(v) > 0) throw PatternError("layout did not reach vertex " + std::to_string(v));
  pat.layout_mismatch = mismatch;
  if (mismatch > tol) {
    std::ostringstream msg;
    msg << "layout cycle mismatch " << mismatch << " exceeds " << tol << " (radii not converged or wrong targets)";
    throw PatternError(msg.str());
  }
  return pat;
}

SphericalPattern apply_mobius(const SphericalPattern& p, const SphereMobius& m) {
  SphericalPattern out = p;
  const SQuadGraph& g = *p.graph;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.is_black(v)) {
      out.point[v] = m.apply(p.point[v]);
      continue;
    }
    const Circle3D c = p.circle(v);
    const Vec3 q0 = m.apply(c.point(0.0)), q1 = m.apply(c.point(2.0943951023931957)),
               q2 = m.apply(c.point(4.1887902047863905));
    const auto img = circle_through(q0, q1, q2);
    if (!img) throw PatternError("Möbius image of a circle is degenerate");
    Vec3 n = img->normal;
    double h = n.dot(img->center);
    // The image of the old spherical center stays inside the cap.
    if (n.dot(m.apply(p.point[v])) < h) {
      n = -n;
      h = -h;
    }
    out.point[v] = n;
    out.radius[v] = std::acos(std::clamp(h, -1.0, 1.0));
  }
  return out;
}

SphericalPattern normalize_pattern(const SphericalPattern& p, MobiusNormalization* info) {
  std::vector<Vec3> contacts;
  for (int v = 0; v < p.graph->vertex_count(); ++v)
    if (p.graph->is_black(v)) contacts.push_back(p.point[v]);
  const MobiusNormalization norm = mobius_center_normalize(contacts);
  if (info) *info = norm;
  return apply_mobius(p, norm.transform);
}

}  // namespace dmin
