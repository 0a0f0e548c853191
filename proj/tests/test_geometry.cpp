#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dmin/geometry.hpp"
#include "dmin/mobius.hpp"

using namespace dmin;
using std::numbers::pi;

namespace {

// Second intersection of the line from the north pole through z with the
// unit sphere, computed without the closed formula.
Vec3 ray_oracle(Complex z) {
  const Vec3 north(0, 0, 1);
  const Vec3 q(z.real(), z.imag(), 0);
  const Vec3 d = q - north;
  const double t = -2 * north.dot(d) / d.squaredNorm();
  return north + t * d;
}

Vec3 random_unit(std::mt19937& rng) {
  std::normal_distribution<double> n;
  return Vec3(n(rng), n(rng), n(rng)).normalized();
}

Vec3 invert(const Vec3& x, const Vec3& c, double r) { return c + r * r * (x - c) / (x - c).squaredNorm(); }

}  // namespace

TEST_CASE("stereographic projection") {
  CHECK((stereographic_project(Complex(0)).vec() - Vec3(0, 0, -1)).norm() < 1e-15);
  CHECK((stereographic_project(Complex(1)).vec() - Vec3(1, 0, 0)).norm() < 1e-15);
  CHECK((stereographic_project(PlanePoint::infinity()).vec() - Vec3(0, 0, 1)).norm() < 1e-15);
  const Vec3 s = stereographic_project(Complex(1, 1)).vec();
  CHECK((s - ray_oracle(Complex(1, 1))).norm() < 1e-14);
  CHECK((s - Vec3(2.0 / 3, 2.0 / 3, 1.0 / 3)).norm() < 1e-15);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int k = 0; k < 200; ++k) {
    const Complex z(u(rng), u(rng));
    const Vec3 x = stereographic_project(z).vec();
    CHECK(std::fabs(x.norm() - 1) < 1e-12);
    CHECK((x - ray_oracle(z)).norm() < 1e-12);
    CHECK(std::abs(stereographic_inverse(x) - z) < 1e-12 * (1 + std::abs(z)));
  }
}

TEST_CASE("stereographic differential") {
  CHECK((stereographic_differential(0.0, 1.0) - Vec3(2, 0, 0)).norm() < 1e-15);
  CHECK((stereographic_differential(0.0, Complex(0, 1)) - Vec3(0, 2, 0)).norm() < 1e-15);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 50; ++k) {
    const Complex p(u(rng), u(rng)), v(u(rng), u(rng));
    const Vec3 d = stereographic_differential(p, v);
    CHECK(std::fabs(d.norm() - 2 * std::abs(v) / (1 + std::norm(p))) < 1e-12);
    const double h = 1e-6;
    const Vec3 fd = (stereographic_project(p + h * v).vec() - stereographic_project(p - h * v).vec()) / (2 * h);
    CHECK((fd - d).norm() < 1e-7);
  }
}

TEST_CASE("plane cross-ratio") {
  CHECK(std::abs(cross_ratio_plane(0.0, 1.0, Complex(1, 1), Complex(0, 1)) + 1.0) < 1e-15);
  CHECK(std::abs(cross_ratio_plane(0.0, 1.0, 2.0, 3.0) + 1.0 / 3) < 1e-15);
  CHECK_THROWS_AS(cross_ratio_plane(1.0, 1.0, 2.0, 3.0), GeometryError);

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 100; ++k) {
    Complex z[4];
    for (auto& w : z) w = Complex(u(rng), u(rng));
    const Complex a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng)), d(u(rng), u(rng));
    if (std::abs(a * d - b * c) < 0.1) continue;
    auto m = [&](Complex w) { return (a * w + b) / (c * w + d); };
    const Complex cr = cross_ratio_plane(z[0], z[1], z[2], z[3]);
    const Complex cm = cross_ratio_plane(m(z[0]), m(z[1]), m(z[2]), m(z[3]));
    CHECK(std::abs(cr - cm) < 1e-8 * (1 + std::abs(cr)));
    const Complex ci = cross_ratio_plane(1.0 / z[0], 1.0 / z[1], 1.0 / z[2], 1.0 / z[3]);
    CHECK(std::abs(cr - ci) < 1e-8 * (1 + std::abs(cr)));
  }
}

TEST_CASE("space cross-ratio") {
  const Complex sq = cross_ratio_space({0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0});
  CHECK(std::abs(sq + 1.0) < 1e-14);
  CHECK(is_conformal_square({0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, 1e-12));
  // Aspect-2 rectangle: (-2)(2)/((-i)(i)) = -4 in this vertex order.
  const Complex rect_plane = cross_ratio_plane(0.0, 2.0, Complex(2, 1), Complex(0, 1));
  const Complex rect = cross_ratio_space({0, 0, 0}, {2, 0, 0}, {2, 1, 0}, {0, 1, 0});
  CHECK(std::abs(rect - rect_plane) < 1e-13);
  CHECK(std::abs(rect + 4.0) < 1e-13);
  CHECK_FALSE(is_conformal_square({0, 0, 0}, {2, 0, 0}, {2, 1, 0}, {0, 1, 0}, 1e-6));

  SUBCASE("right-angled kites") {
    for (double r1 : {0.3, 1.0, 2.5})
      for (double r2 : {0.2, 0.7, 4.0}) {
        // Circle center, contact, sphere center, contact with a right angle at the contacts.
        const double d = std::hypot(r1, r2);
        const Vec3 c(0, 0, 0), s(d, 0, 0);
        const double x = r1 * r1 / d, y = r1 * r2 / d;
        const Vec3 b1(x, y, 0), b2(x, -y, 0);
        CHECK(std::abs(cross_ratio_space(c, b1, s, b2) + 1.0) < 1e-10);
      }
  }

  SUBCASE("concyclic points give a real value") {
    std::mt19937 rng(5);
    for (int k = 0; k < 20; ++k) {
      const Vec3 n = random_unit(rng);
      const Vec3 e1 = n.unitOrthogonal(), e2 = n.cross(e1);
      Vec3 p[4];
      for (int i = 0; i < 4; ++i) {
        const double t = 0.3 + 1.4 * i + 0.2 * k / 20.0;
        p[i] = Vec3(1, 2, 3) + 1.7 * (std::cos(t) * e1 + std::sin(t) * e2);
      }
      CHECK(std::fabs(cross_ratio_space(p[0], p[1], p[2], p[3]).imag()) < 1e-10);
    }
  }

  SUBCASE("invariance under motions and inversions up to conjugation") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int k = 0; k < 50; ++k) {
      Vec3 p[4];
      for (auto& q : p) q = Vec3(u(rng), u(rng), u(rng));
      const Complex cr = cross_ratio_space(p[0], p[1], p[2], p[3]);
      CHECK(cr.imag() >= 0);
      const Eigen::Matrix3d R = Eigen::AngleAxisd(u(rng) * pi, random_unit(rng)).toRotationMatrix();
      const Vec3 t(u(rng), u(rng), u(rng));
      Vec3 q[4];
      for (int i = 0; i < 4; ++i) q[i] = R * p[i] + t;
      CHECK(std::abs(cross_ratio_space(q[0], q[1], q[2], q[3]) - cr) < 1e-9 * (1 + std::abs(cr)));
      const Vec3 c = Vec3(3, 0, 0) + Vec3(u(rng), u(rng), u(rng));
      for (int i = 0; i < 4; ++i) q[i] = invert(p[i], c, 1.3);
      CHECK(std::abs(cross_ratio_space(q[0], q[1], q[2], q[3]) - cr) < 1e-8 * (1 + std::abs(cr)));
    }
  }

  CHECK_THROWS_AS(cross_ratio_space({0, 0, 0}, {0, 0, 0}, {1, 0, 0}, {0, 1, 0}), GeometryError);
}

TEST_CASE("spheres, circles, hull distance") {
  const auto s = sphere_through({1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1});
  REQUIRE(s);
  CHECK(s->center.norm() < 1e-14);
  CHECK(std::fabs(s->radius - 1) < 1e-14);
  CHECK_FALSE(sphere_through({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}));
  const auto c = circle_through({2, 0, 5}, {0, 2, 5}, {-2, 0, 5});
  REQUIRE(c);
  CHECK((c->center - Vec3(0, 0, 5)).norm() < 1e-14);
  CHECK(std::fabs(c->radius - 2) < 1e-14);
  CHECK(std::fabs(std::fabs(c->normal.z()) - 1) < 1e-14);
  CHECK_FALSE(circle_through({0, 0, 0}, {1, 1, 1}, {2, 2, 2}));

  CHECK((rotate_about(Vec3(1, 0, 0), Vec3(0, 0, 1), pi / 2) - Vec3(0, 1, 0)).norm() < 1e-15);

  CHECK(distance_origin_to_hull({{1, 1, 0}, {1, -1, 0}, {1, 0, 1}}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(distance_origin_to_hull({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) < 1e-12);
  CHECK(segment_point_distance({0, 0, 0}, {2, 0, 0}, {1, 3, 0}) == doctest::Approx(3.0));
}

TEST_CASE("Möbius gauge normalization") {
  std::vector<Vec3> balanced{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  const MobiusNormalization id = mobius_center_normalize(balanced);
  CHECK(id.transform.is_identity(1e-9));

  std::mt19937 rng(21);
  std::vector<Vec3> cap;
  for (int k = 0; k < 30; ++k) cap.push_back((random_unit(rng) + Vec3(0, 0, 3)).normalized());
  const MobiusNormalization m = mobius_center_normalize(cap);
  Vec3 sum = Vec3::Zero();
  std::vector<Vec3> moved;
  for (const Vec3& x : cap) {
    moved.push_back(m.transform.apply(x));
    CHECK(std::fabs(moved.back().norm() - 1) < 1e-12);
    sum += moved.back();
  }
  CHECK(sum.norm() <= 1e-9);
  CHECK(m.residual <= 1e-9);
  const MobiusNormalization again = mobius_center_normalize(moved);
  CHECK(again.transform.is_identity(1e-6));

  // Möbius maps preserve cross-ratios (up to conjugation).
  const Complex before = cross_ratio_space(cap[0], cap[1], cap[2], cap[3]);
  const Complex after = cross_ratio_space(moved[0], moved[1], moved[2], moved[3]);
  CHECK(std::abs(before - after) < 1e-8 * (1 + std::abs(before)));

  CHECK_THROWS_AS(mobius_center_normalize({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), GeometryError);
}
