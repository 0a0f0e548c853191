#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "dmin/minimal.hpp"

namespace dmin {

double weierstrass_sphere_radius(Complex c, Complex p) {
  const double d = std::abs(c - p);
  if (d == 0.0) throw GeometryError("sphere radius undefined: circle center equals the contact point");
  return std::fabs((1.0 + std::norm(c) - d * d) / (2.0 * d));
}

Vec3 weierstrass_edge(Complex c1, Complex c2, Complex p, int sign, double phi) {
  const double len = std::abs(c2 - c1);
  if (len == 0.0) throw GeometryError("touching circles must have distinct centers");
  const double rr = weierstrass_sphere_radius(c1, p) + weierstrass_sphere_radius(c2, p);
  const Complex k = std::polar(1.0, phi) * (rr / (1.0 + std::norm(p))) * std::conj(c2 - c1) / len;
  return sign * (k * weierstrass_null_vector(p)).real();
}

namespace {

struct Step {
  int to;
  int contact;
  int sign;
};

}  // namespace

MinimalSurface build_from_weierstrass(const PlanarPattern& p, const EdgeSigns& signs, double phi, double tol) {
  const SQuadGraph& g = *p.graph;
  const int nv = g.vertex_count();
  if (signs.size() != g.edge_count()) throw GeometryError("edge signs do not match the pattern graph");
  auto is_sphere = [&](int v) { return g.label(v) == Label::SphereWhite; };

  std::vector<std::vector<Step>> steps(nv);
  for (int y = 0; y < nv; ++y) {
    if (!g.is_black(y)) continue;
    std::vector<int> sp;
    for (int e : g.incident_edges(y))
      if (is_sphere(g.other_end(e, y))) sp.push_back(e);
    if (sp.size() != 2) continue;
    const int a = g.other_end(sp[0], y), b = g.other_end(sp[1], y);
    steps[a].push_back({b, y, signs[sp[0]]});
    steps[b].push_back({a, y, signs[sp[1]]});
  }

  MinimalSurface m;
  SIsothermicSurface& s = m.surface;
  s.graph = p.graph;
  s.role = g.labels();
  s.position.assign(nv, Vec3::Zero());
  s.radius.assign(nv, 0.0);
  s.normal.assign(nv, Vec3::Zero());
  s.at_infinity.assign(nv, 1);

  int root = -1;
  for (int v = 0; v < nv && root < 0; ++v)
    if (is_sphere(v) && !steps[v].empty()) root = v;
  if (root < 0) throw GeometryError("pattern has no touching sphere circles");

  std::vector<int> parent_contact(nv, -1);
  std::deque<int> queue{root};
  s.at_infinity[root] = 0;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (const Step& st : steps[x]) {
      if (!s.at_infinity[st.to]) continue;
      s.position[st.to] = s.position[x] + weierstrass_edge(p.center[x], p.center[st.to], p.center[st.contact], st.sign, phi);
      s.at_infinity[st.to] = 0;
      parent_contact[st.to] = st.contact;
      queue.push_back(st.to);
    }
  }
  for (int v = 0; v < nv; ++v)
    if (is_sphere(v) && s.at_infinity[v]) throw GeometryError("sphere vertex " + std::to_string(v) + " is not connected to the base point");

  for (int v = 0; v < nv; ++v)
    if (is_sphere(v)) {
      for (int e : g.incident_edges(v)) {
        s.radius[v] = weierstrass_sphere_radius(p.center[v], p.center[g.other_end(e, v)]);
        break;
      }
    }

  // Contacts: on the segment between touching centers, at distance R1 from the first.
  for (int y = 0; y < nv; ++y) {
    if (!g.is_black(y)) continue;
    for (int e : g.incident_edges(y)) {
      const int x = g.other_end(e, y);
      if (!is_sphere(x)) continue;
      const Complex mirror = 2.0 * p.center[y] - p.center[x];
      const Vec3 dir = weierstrass_edge(p.center[x], mirror, p.center[y], signs[e], phi).normalized();
      s.position[y] = s.position[x] + s.radius[x] * dir;
      s.at_infinity[y] = 0;
      break;
    }
  }

  // Closure over the cycles closed by non-tree steps.
  double worst = 0.0;
  int worst_a = -1, worst_b = -1, worst_y = -1;
  for (int x = 0; x < nv; ++x)
    for (const Step& st : steps[x]) {
      if (parent_contact[st.to] == st.contact || parent_contact[x] == st.contact) continue;
      const Vec3 d = weierstrass_edge(p.center[x], p.center[st.to], p.center[st.contact], st.sign, phi);
      const double r = (s.position[st.to] - s.position[x] - d).norm();
      if (r > worst) {
        worst = r;
        worst_a = x;
        worst_b = st.to;
        worst_y = st.contact;
      }
    }

  for (int c = 0; c < nv; ++c) {
    if (g.label(c) != Label::CircleWhite) continue;
    std::vector<Vec3> pts;
    for (int e : g.incident_edges(c))
      if (!s.at_infinity[g.other_end(e, c)]) pts.push_back(s.position[g.other_end(e, c)]);
    if (pts.size() < 3) continue;
    const auto circ = circle_through(pts[0], pts[1], pts[2]);
    if (!circ) continue;
    double off = 0.0;
    for (size_t i = 3; i < pts.size(); ++i) {
      const Vec3 q = pts[i] - circ->center;
      const double h = q.dot(circ->normal);
      off = std::max(off, std::hypot(h, (q - h * circ->normal).norm() - circ->radius));
    }
    if (off > 1e-6 * circ->radius) continue;
    s.position[c] = circ->center;
    s.radius[c] = circ->radius;
    s.normal[c] = circ->normal;
    s.at_infinity[c] = 0;
  }

  const double diam = s.diameter();
  if (worst > tol * diam) {
    std::ostringstream msg;
    msg << "Weierstrass integration does not close: cycle through sphere vertices " << worst_a << " -> " << worst_b
        << " via contact " << worst_y << " misses by " << worst << " (diameter " << diam << ")";
    throw GeometryError(msg.str());
  }
  m.dual.closure_residual = worst;
  m.dual.diameter = diam;
  m.dual.position = s.position;
  m.dual.at_infinity = s.at_infinity;
  m.dual.basepoint = root;
  assess_minimality(m);
  return m;
}

}  // namespace dmin
