#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include "dmin/parallel.hpp"
#include "dmin/surfaces.hpp"

using namespace dmin;
using std::numbers::pi;

namespace {

// Deviation after the best rigid motion, allowing an orientation reversal.
double rigid_deviation(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  const Registration proper = register_similarity(a, b);
  std::vector<Vec3> mirrored = a;
  for (Vec3& x : mirrored) x.z() = -x.z();
  const Registration improper = register_similarity(mirrored, b);
  const Registration& best = proper.max_deviation < improper.max_deviation ? proper : improper;
  CHECK(best.scale == doctest::Approx(1.0).epsilon(1e-9));
  return best.max_deviation;
}

// Composite Simpson along the segment 0 -> z of Re(integrand) dz.
template <class F>
Vec3 line_integral(F integrand, Complex z, int n = 2000) {
  Eigen::Vector3cd sum = Eigen::Vector3cd::Zero();
  for (int k = 0; k <= n; ++k) {
    const double w = (k == 0 || k == n) ? 1 : (k % 2 ? 4 : 2);
    sum += w * integrand(z * (double(k) / n));
  }
  return (sum * z / (3.0 * n)).real();
}

}  // namespace

TEST_CASE("Enneper surface") {
  const SurfaceModel m = make_enneper(4);
  const SIsothermicSurface& s = m.minimal.surface;
  CHECK(m.minimal.max_minimality <= 1e-8);
  CHECK(m.minimal.max_hull_distance <= 1e-9);
  CHECK(s_isothermic_residuals(s).max() <= 1e-8);
  CHECK(m.minimal.dual.relative_residual() <= 1e-9);

  // Central vertex lies in the convex hull of its neighbours.
  const PlanarPattern& p = *m.planar;
  const int center = p.id(0, 0);
  std::vector<Vec3> nb;
  for (int e : s.graph->incident_edges(center)) nb.push_back(s.position[s.graph->other_end(e, center)] - s.position[center]);
  CHECK(distance_origin_to_hull(nb) <= 1e-9 * s.diameter());

  // Quarter turn of the lattice maps the surface to itself up to a rigid motion.
  std::vector<Vec3> a, b;
  for (int v = 0; v < s.vertex_count(); ++v) {
    const auto [i, j] = p.index[v];
    a.push_back(s.position[v]);
    b.push_back(s.position[p.id(-j, i)]);
  }
  CHECK(rigid_deviation(a, b) <= 1e-8 * s.diameter());
  CHECK_THROWS_AS(make_enneper(1), GeometryError);
}

TEST_CASE("catenoid") {
  const SurfaceModel m = make_catenoid(6, 4);
  const SIsothermicSurface& s = m.minimal.surface;
  CHECK(m.ring_closure <= 1e-8);
  CHECK(m.minimal.max_minimality <= 1e-7);
  CHECK(m.minimal.max_hull_distance <= 1e-9);
  CHECK(s_isothermic_residuals(s).max() <= 1e-8);

  // Shifting m by 2 is rotation by 2 pi / N about the axis.
  const PlanarPattern& p = *m.planar;
  std::vector<Vec3> a, b;
  for (int v = 0; v < s.vertex_count(); ++v) {
    const auto [n, k] = p.index[v];
    if (k + 2 > p.j1) continue;
    a.push_back(s.position[v]);
    b.push_back(s.position[p.id(n, k + 2)]);
  }
  const Registration reg = register_similarity(a, b);
  CHECK(reg.max_deviation <= 1e-8 * s.diameter());
  CHECK(reg.scale == doctest::Approx(1.0).epsilon(1e-9));
  const Eigen::AngleAxisd aa(reg.rotation);
  CHECK(aa.angle() == doctest::Approx(pi / 3).epsilon(1e-8));

  // Every row of spheres closes into a ring: the seam copies coincide.
  for (int n = -4; n <= 4; ++n) {
    const int x = p.id(n, 0), y = p.id(n, 12);
    if (s.finite(x)) CHECK((s.position[x] - s.position[y]).norm() <= 1e-8 * s.diameter());
  }

  // Associated family keeps the sphere radii.
  const AssociatedFamilyMember f = associated_family_geometric(m.koebe, m.signs, pi / 2, 0, false);
  for (int v = 0; v < s.vertex_count(); ++v)
    if (s.is_sphere(v) && s.finite(v)) CHECK(std::fabs(f.surface.radius[v] - s.radius[v]) <= 1e-9 * s.radius[v]);

  SUBCASE("single row window") {
    const SurfaceModel thin = make_catenoid(6, 1);
    CHECK(thin.ring_closure <= 1e-8);
    CHECK(thin.minimal.max_minimality <= 1e-7);
  }
}

TEST_CASE("Schwarz P") {
  const SurfaceModel m = make_schwarz_p(2, 2, 2);
  const SIsothermicSurface& s = m.minimal.surface;
  CHECK(m.minimal.interior_sphere_vertices > 0);
  CHECK(m.minimal.max_minimality <= 1e-7);
  CHECK(m.minimal.max_hull_distance <= 1e-9);

  // Base pattern: the cube's midsphere radii.
  for (int v = 0; v < s.vertex_count(); ++v) {
    if (s.is_contact(v)) continue;
    const double r = m.pattern.radius[v];
    if (s.is_sphere(v)) CHECK(r == doctest::Approx(pi / 4).epsilon(1e-8));
    else CHECK(std::cos(r) == doctest::Approx(std::sqrt(2.0 / 3)).epsilon(1e-8));
  }
  // All face spheres are equivalent under the cube's rotations.
  for (int v = 0; v < s.vertex_count(); ++v)
    if (s.is_sphere(v) && s.finite(v)) CHECK(s.radius[v] == doctest::Approx(1.0).epsilon(1e-8));

  // Periods span a cubic lattice: three orthogonal periods of equal length
  // generate all others with integer coefficients.
  REQUIRE(m.periods.size() >= 3);
  std::vector<Vec3> sorted = m.periods;
  std::sort(sorted.begin(), sorted.end(), [](const Vec3& x, const Vec3& y) { return x.norm() < y.norm(); });
  const double a = sorted.front().norm();
  std::vector<Vec3> basis;
  for (const Vec3& p : sorted) {
    if (std::fabs(p.norm() - a) > 1e-6 * a) continue;
    bool orthogonal = true;
    for (const Vec3& q : basis) orthogonal &= std::fabs(p.dot(q)) < 1e-6 * a * a;
    if (orthogonal) basis.push_back(p);
  }
  REQUIRE(basis.size() == 3);
  for (const Vec3& p : m.periods)
    for (const Vec3& e : basis) {
      const double c = p.dot(e) / (a * a);
      CHECK(std::fabs(c - std::round(c)) < 1e-6);
    }

  SUBCASE("unequal refinement") {
    const SurfaceModel u = make_schwarz_p(2, 2, 4);
    CHECK(u.minimal.max_minimality <= 1e-7);
    CHECK(u.minimal.max_hull_distance <= 1e-9);
    CHECK(s_isothermic_residuals(u.minimal.surface).max() <= 1e-7);
  }
}

TEST_CASE("Scherk tower") {
  const SurfaceModel m = make_scherk(2, 2, 1.0);
  CHECK(m.minimal.max_minimality <= 1e-7);
  CHECK(m.minimal.max_hull_distance <= 1e-9);
  REQUIRE(m.end_normals.size() == 4);

  // Ends come in antipodal pairs whose planes meet orthogonally.
  const auto& n = m.end_normals;
  int antipodal = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const double d = n[i].dot(n[j]);
      if (std::fabs(d + 1) < 1e-6) ++antipodal;
      else CHECK(std::fabs(d) < 1e-6);
    }
  CHECK(antipodal == 2);

  // Every ray lies in its end plane, and every end carries rays.
  const ScherkGraph sg = make_scherk_graph(2, 2);
  std::vector<int> rays_per_end(4, 0);
  for (const auto& r : m.minimal.surface.rays) {
    const int u = m.source_vertex[r.from];
    int end = -1;
    for (int e : sg.graph.incident_edges(u)) {
      const auto it = std::find(sg.end_vertices.begin(), sg.end_vertices.end(), sg.graph.other_end(e, u));
      if (it != sg.end_vertices.end()) end = static_cast<int>(it - sg.end_vertices.begin());
    }
    REQUIRE(end >= 0);
    ++rays_per_end[end];
    CHECK(std::fabs(r.direction.normalized().dot(n[end])) < 1e-6);
  }
  for (int c : rays_per_end) CHECK(c > 0);
  CHECK(m.periods.size() >= 1);
  CHECK_THROWS_AS(make_scherk(2, 2, 0.0), GeometryError);
}

TEST_CASE("smooth Weierstrass surfaces") {
  CHECK(smooth_weierstrass(SmoothFamily::Enneper, 0.0).norm() == 0.0);
  CHECK((smooth_weierstrass(SmoothFamily::Enneper, 1.0) - Vec3(2.0 / 3, 0, 1)).norm() < 1e-15);
  const Complex i(0, 1);
  auto enneper = [&](Complex z) { return Eigen::Vector3cd(1.0 - z * z, i * (1.0 + z * z), 2.0 * z); };
  auto catenoid = [&](Complex z) { return Eigen::Vector3cd(-2.0 * std::sinh(z), 2.0 * i * std::cosh(z), 2.0); };
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int k = 0; k < 20; ++k) {
    const Complex z(u(rng), u(rng));
    CHECK((line_integral(enneper, z) - smooth_weierstrass(SmoothFamily::Enneper, z)).norm() < 1e-10);
    const Vec3 base = smooth_weierstrass(SmoothFamily::Catenoid, 0.0);
    CHECK((line_integral(catenoid, z) - (smooth_weierstrass(SmoothFamily::Catenoid, z) - base)).norm() < 1e-10);
  }
  // The catenoid is periodic in Im z with period 2 pi.
  CHECK((smooth_weierstrass(SmoothFamily::Catenoid, Complex(0.3, 0.2)) -
         smooth_weierstrass(SmoothFamily::Catenoid, Complex(0.3, 0.2 + 2 * pi))).norm() < 1e-12);
}

TEST_CASE("convergence to smooth Enneper") {
  const ConvergenceReport r = convergence_report(SmoothFamily::Enneper, {4, 8, 16, 32});
  REQUIRE(r.levels.size() == 4);
  CHECK(r.slope >= -1.4);
  CHECK(r.slope <= -0.6);
  for (size_t k = 1; k < r.levels.size(); ++k) {
    const double ratio = r.levels[k].error / r.levels[k - 1].error;
    CAPTURE(k);
    CHECK(ratio >= 0.3);
    CHECK(ratio <= 0.8);
  }
  for (const auto& l : r.levels) MESSAGE("n=" << l.n << " error=" << l.error << " center=" << l.center_error);
}

TEST_CASE("convergence to smooth catenoid") {
  const ConvergenceReport r = convergence_report(SmoothFamily::Catenoid, {8, 16, 32});
  CHECK(r.slope >= -1.4);
  CHECK(r.slope <= -0.6);
}

TEST_CASE("parallel loop") {
  std::vector<int> hit(1000, 0);
  parallel_for(1000, [&](int i) { hit[i] += 1; });
  CHECK(std::count(hit.begin(), hit.end(), 1) == 1000);
  CHECK_THROWS_AS(parallel_for(50, [](int i) {
                    if (i == 17) throw GeometryError("boom");
                  }),
                  GeometryError);
  setenv("KOEBE_MINIMAL_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  unsetenv("KOEBE_MINIMAL_THREADS");
  CHECK(worker_count() >= 1);
}
