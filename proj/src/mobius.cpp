#include "dmin/mobius.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace dmin {

SphereMobius SphereMobius::boost(const Vec3& v) {
  const double b2 = v.squaredNorm();
  if (b2 >= 1.0) throw GeometryError("boost velocity must have norm < 1");
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  if (b2 == 0.0) return SphereMobius(m);
  const double gamma = 1.0 / std::sqrt(1.0 - b2);
  const Vec3 u = v / std::sqrt(b2);
  m.topLeftCorner<3, 3>() += (gamma - 1.0) * u * u.transpose();
  m.topRightCorner<3, 1>() = -gamma * v;
  m.bottomLeftCorner<1, 3>() = -gamma * v.transpose();
  m(3, 3) = gamma;
  return SphereMobius(m);
}

Vec3 SphereMobius::apply(const Vec3& x) const {
  Eigen::Vector4d X;
  X << x, 1.0;
  const Eigen::Vector4d Y = lorentz_ * X;
  return Y.head<3>() / Y(3);
}

bool SphereMobius::is_identity(double tol) const {
  // Lorentz matrices are defined up to positive scale only through the
  // normalization of the time component, which stays exact here.
  return (lorentz_ - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() <= tol;
}

MobiusNormalization mobius_center_normalize(const std::vector<Vec3>& points, double tol,
                                            int max_iterations) {
  if (points.size() < 4) throw GeometryError("Möbius normalization needs at least 4 points");
  std::vector<Vec3> current = points;
  MobiusNormalization out;

  auto vector_sum = [](const std::vector<Vec3>& pts) {
    Vec3 s = Vec3::Zero();
    for (const auto& p : pts) s += p;
    return s;
  };

  Vec3 sum = vector_sum(current);
  for (int it = 0; it < max_iterations; ++it) {
    out.iterations = it;
    if (sum.norm() <= tol) {
      out.residual = sum.norm();
      return out;
    }
    // Linearization at the identity: d(image)/dv = -(I - x x^T).
    Eigen::Matrix3d jac = Eigen::Matrix3d::Zero();
    for (const auto& x : current) jac += Eigen::Matrix3d::Identity() - x * x.transpose();
    Vec3 v = jac.ldlt().solve(sum);
    if (!v.allFinite()) v = sum / static_cast<double>(current.size());
    if (v.norm() > 0.9) v *= 0.9 / v.norm();

    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving) {
      const SphereMobius step = SphereMobius::boost(v);
      std::vector<Vec3> trial(current.size());
      for (std::size_t i = 0; i < current.size(); ++i) trial[i] = step.apply(current[i]).normalized();
      const Vec3 trial_sum = vector_sum(trial);
      if (trial_sum.norm() < sum.norm()) {
        current = std::move(trial);
        sum = trial_sum;
        out.transform = step.compose(out.transform);
        accepted = true;
        break;
      }
      v *= 0.5;
    }
    if (!accepted) break;
  }
  out.residual = sum.norm();
  if (out.residual > tol)
    throw GeometryError("Möbius normalization did not converge, residual " +
                        std::to_string(out.residual));
  return out;
}

}  // namespace dmin
