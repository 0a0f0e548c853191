#include "dmin/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace dmin {

Complex PlanePoint::value() const {
  if (infinite_) throw GeometryError("point at infinity has no finite value");
  return z_;
}

SpherePoint::SpherePoint(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw GeometryError("cannot normalize zero vector");
  v_ = v / n;
}

namespace {

// Orthonormal pair spanning the plane orthogonal to `n`.
std::pair<Vec3, Vec3> plane_frame(const Vec3& n) {
  Vec3 a = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  Vec3 e1 = (a - a.dot(n) * n).normalized();
  return {e1, n.cross(e1)};
}

}  // namespace

Vec3 Circle3D::point(double t) const {
  auto [e1, e2] = plane_frame(normal);
  return center + radius * (std::cos(t) * e1 + std::sin(t) * e2);
}

Vec3 Circle3D::tangent_at(const Vec3& p) const {
  return normal.cross(p - center).normalized();
}

SpherePoint stereographic_project(const PlanePoint& p) {
  if (p.is_infinite()) return SpherePoint(Vec3::UnitZ());
  const Complex z = p.value();
  const double n2 = std::norm(z);
  return SpherePoint(Vec3(2.0 * z.real(), 2.0 * z.imag(), n2 - 1.0) / (1.0 + n2));
}

Complex stereographic_inverse(const Vec3& x) {
  const double d = 1.0 - x.z();
  if (std::abs(d) < 1e-300) throw GeometryError("north pole maps to infinity");
  return {x.x() / d, x.y() / d};
}

Eigen::Vector3cd weierstrass_null_vector(Complex p) {
  const Complex i(0.0, 1.0);
  return {1.0 - p * p, i * (1.0 + p * p), 2.0 * p};
}

Vec3 stereographic_differential(Complex p, Complex v) {
  const double s = 1.0 + std::norm(p);
  const Eigen::Vector3cd w = (2.0 * std::conj(v) / (s * s)) * weierstrass_null_vector(p);
  return w.real();
}

Complex cross_ratio_plane(Complex z1, Complex z2, Complex z3, Complex z4) {
  const Complex den = (z2 - z3) * (z4 - z1);
  if (std::abs(z1 - z2) == 0.0 || std::abs(z2 - z3) == 0.0 || std::abs(z3 - z4) == 0.0 ||
      std::abs(z4 - z1) == 0.0)
    throw GeometryError("cross-ratio of coincident consecutive points");
  return (z1 - z2) * (z3 - z4) / den;
}

Complex cross_ratio_space(const Vec3& p1, const Vec3& p2, const Vec3& p3, const Vec3& p4) {
  const Vec3* pts[4] = {&p1, &p2, &p3, &p4};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if ((*pts[a] - *pts[b]).norm() == 0.0)
        throw GeometryError("cross-ratio of coincident points");

  auto invert = [&](const Vec3& p) {
    const Vec3 d = p - p4;
    return Vec3(d / d.squaredNorm());
  };
  const Vec3 q1 = invert(p1), q2 = invert(p2), q3 = invert(p3);
  const Vec3 a = q1 - q2;
  const Vec3 b = q2 - q3;
  const double la = a.norm(), lb = b.norm();
  const double cos_t = std::clamp(a.dot(b) / (la * lb), -1.0, 1.0);
  const double sin_t = a.cross(b).norm() / (la * lb);
  const double theta = std::atan2(sin_t, cos_t);
  // a/b as a complex ratio in the plane of q1, q2, q3, up to orientation.
  const Complex ratio = std::polar(la / lb, theta);
  Complex cr = -ratio;
  if (cr.imag() < 0.0) cr = std::conj(cr);
  return cr;
}

bool is_conformal_square(const Vec3& p1, const Vec3& p2, const Vec3& p3, const Vec3& p4,
                         double tol) {
  return std::abs(cross_ratio_space(p1, p2, p3, p4) + 1.0) <= tol;
}

std::optional<Sphere3D> sphere_through(const Vec3& a, const Vec3& b, const Vec3& c,
                                       const Vec3& d) {
  // |x - m|^2 = r^2 for all four points; subtract the first equation.
  Eigen::Matrix3d m;
  m.row(0) = 2.0 * (b - a);
  m.row(1) = 2.0 * (c - a);
  m.row(2) = 2.0 * (d - a);
  const Vec3 rhs(b.squaredNorm() - a.squaredNorm(), c.squaredNorm() - a.squaredNorm(),
                 d.squaredNorm() - a.squaredNorm());
  const double scale = std::max({(b - a).norm(), (c - a).norm(), (d - a).norm()});
  if (std::abs(m.determinant()) <= 1e-12 * std::pow(2.0 * scale, 3)) return std::nullopt;
  const Vec3 center = m.partialPivLu().solve(rhs);
  return Sphere3D{center, (a - center).norm()};
}

std::optional<Circle3D> circle_through(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 u = b - a, v = c - a;
  const Vec3 w = u.cross(v);
  const double w2 = w.squaredNorm();
  if (w2 <= 1e-24 * u.squaredNorm() * v.squaredNorm()) return std::nullopt;
  const Vec3 center =
      a + (u.squaredNorm() * v.cross(w) + v.squaredNorm() * w.cross(u)) / (2.0 * w2);
  return Circle3D{center, (a - center).norm(), w.normalized()};
}

Vec3 rotate_about(const Vec3& v, const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis) * v;
}

double segment_point_distance(const Vec3& a, const Vec3& b, const Vec3& p) {
  const Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * ab - p).norm();
}

namespace {

// Closest point of triangle abc to p (Ericson, Real-Time Collision Detection 5.1.5).
Vec3 closest_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return a;
  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return b;
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + (d1 / (d1 - d3)) * ab;
  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return c;
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + (d2 / (d2 - d6)) * ac;
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0)
    return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

bool origin_in_tetrahedron(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  Eigen::Matrix3d m;
  m.col(0) = b - a;
  m.col(1) = c - a;
  m.col(2) = d - a;
  const double det = m.determinant();
  const double scale = m.colwise().norm().prod();
  if (std::abs(det) <= 1e-14 * scale) return false;
  const Vec3 w = m.partialPivLu().solve(-a);
  return w.minCoeff() >= 0.0 && w.sum() <= 1.0;
}

}  // namespace

double distance_origin_to_hull(const std::vector<Vec3>& pts) {
  const std::size_t n = pts.size();
  if (n == 0) return std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l)
          if (origin_in_tetrahedron(pts[i], pts[j], pts[k], pts[l])) return 0.0;

  double best = std::numeric_limits<double>::infinity();
  const Vec3 o = Vec3::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, pts[i].norm());
    for (std::size_t j = i + 1; j < n; ++j) {
      best = std::min(best, segment_point_distance(pts[i], pts[j], o));
      for (std::size_t k = j + 1; k < n; ++k)
        best = std::min(best, closest_on_triangle(o, pts[i], pts[j], pts[k]).norm());
    }
  }
  return best;
}

}  // namespace dmin
