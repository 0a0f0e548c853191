#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace dmin {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Complex = std::complex<double>;

/// Raised when an input violates an operation's precondition.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point of the Riemann sphere: a finite complex value or infinity.
class PlanePoint {
 public:
  PlanePoint(Complex z) : z_(z) {}  // NOLINT(google-explicit-constructor)
  PlanePoint(double x, double y) : z_(x, y) {}
  static PlanePoint infinity() {
    PlanePoint p(0.0);
    p.infinite_ = true;
    return p;
  }

  bool is_infinite() const { return infinite_; }
  Complex value() const;

 private:
  Complex z_;
  bool infinite_ = false;
};

/// Unit vector in R^3.
class SpherePoint {
 public:
  /// Normalizes `v`; throws on the zero vector.
  explicit SpherePoint(const Vec3& v);
  const Vec3& vec() const { return v_; }
  operator const Vec3&() const { return v_; }  // NOLINT(google-explicit-constructor)

 private:
  Vec3 v_;
};

struct Circle3D {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
  Vec3 normal = Vec3::UnitZ();

  /// Point at angle `t` measured from an arbitrary but fixed in-plane frame.
  Vec3 point(double t) const;
  /// Unit tangent at a point of the circle (direction of increasing angle about `normal`).
  Vec3 tangent_at(const Vec3& p) const;
};

struct Sphere3D {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
};

// Stereographic projection from the north pole onto the unit sphere.
SpherePoint stereographic_project(const PlanePoint& p);
Complex stereographic_inverse(const Vec3& x);
Vec3 stereographic_differential(Complex p, Complex v);

/// The null vector (1 - p^2, i(1 + p^2), 2p) shared by the stereographic
/// differential and the Weierstrass formulas.
Eigen::Vector3cd weierstrass_null_vector(Complex p);

Complex cross_ratio_plane(Complex z1, Complex z2, Complex z3, Complex z4);

/// Cross-ratio of four points in R^3, normalized to Im >= 0.
///
/// Computed by inverting in a sphere centered at `p4`: the images of p1..p3
/// span a plane (the image of any sphere through the four points) and the
/// cross-ratio becomes -(q1 - q2)/(q2 - q3) read as a ratio of coplanar vectors.
Complex cross_ratio_space(const Vec3& p1, const Vec3& p2, const Vec3& p3, const Vec3& p4);

bool is_conformal_square(const Vec3& p1, const Vec3& p2, const Vec3& p3, const Vec3& p4,
                         double tol);

/// Sphere through four points; nullopt when they are coplanar.
std::optional<Sphere3D> sphere_through(const Vec3& a, const Vec3& b, const Vec3& c,
                                       const Vec3& d);
/// Circle through three points; nullopt when they are collinear.
std::optional<Circle3D> circle_through(const Vec3& a, const Vec3& b, const Vec3& c);

/// Rotation of `v` about the unit `axis` by `angle` (right-handed).
Vec3 rotate_about(const Vec3& v, const Vec3& axis, double angle);

/// Euclidean distance from the origin to the convex hull of `points`.
double distance_origin_to_hull(const std::vector<Vec3>& points);

double segment_point_distance(const Vec3& a, const Vec3& b, const Vec3& p);

}  // namespace dmin
