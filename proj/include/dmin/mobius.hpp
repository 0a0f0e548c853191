#pragma once

#include <vector>

#include <Eigen/Core>

#include "dmin/geometry.hpp"

namespace dmin {

/// Orientation-preserving Möbius transformation of the unit sphere, stored as
/// the corresponding Lorentz matrix acting on the light cone {(x, 1) : |x| = 1}.
class SphereMobius {
 public:
  SphereMobius() : lorentz_(Eigen::Matrix4d::Identity()) {}
  explicit SphereMobius(const Eigen::Matrix4d& lorentz) : lorentz_(lorentz) {}

  /// Hyperbolic translation with velocity `v` (|v| < 1); pushes points toward -v.
  static SphereMobius boost(const Vec3& v);

  Vec3 apply(const Vec3& x) const;
  /// (*this) after `inner`.
  SphereMobius compose(const SphereMobius& inner) const {
    return SphereMobius(lorentz_ * inner.lorentz_);
  }
  const Eigen::Matrix4d& matrix() const { return lorentz_; }
  bool is_identity(double tol) const;

 private:
  Eigen::Matrix4d lorentz_;
};

struct MobiusNormalization {
  SphereMobius transform;
  double residual = 0.0;  // norm of the vector sum after the transform
  int iterations = 0;
};

/// Finds a sphere Möbius transformation balancing `points` (vector sum ~ 0).
/// Throws GeometryError if fewer than 4 points or the iteration cap is hit.
MobiusNormalization mobius_center_normalize(const std::vector<Vec3>& points, double tol = 1e-9,
                                            int max_iterations = 200);

}  // namespace dmin
