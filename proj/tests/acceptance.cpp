// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "dmin/dilog.hpp"
#include "dmin/minimal.hpp"
#include "dmin/surfaces.hpp"

using namespace dmin;
using std::numbers::pi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void run(int id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  if (!o.pass) ++failures;
  std::printf("%s criterion %d (%s):%s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.str().c_str());
  std::fflush(stdout);
}

SphericalFunctional functional_of(const SQuadGraph& g) {
  const CircleAdjacency adj = CircleAdjacency::from_graph(g);
  return SphericalFunctional(adj, default_targets(g, adj));
}

struct Models {
  SurfaceModel enneper = make_enneper(4);
  SurfaceModel catenoid = make_catenoid(6, 4);
  SurfaceModel schwarz = make_schwarz_p(2, 2, 2);
  SurfaceModel scherk = make_scherk(2, 2, 1.0);
  std::vector<const SurfaceModel*> all() const { return {&enneper, &catenoid, &schwarz, &scherk}; }
};

const Models& models() {
  static const Models m;
  return m;
}

}  // namespace

int main() {
  run(1, "cube solve against the midsphere radii", [](Outcome& o) {
    const RefinedCube cube = make_refined_cube(2, 2, 2);
    const auto t0 = Clock::now();
    const SphericalFunctional fn = functional_of(cube.graph);
    const SolveResult res = solve_pattern(fn, Eigen::VectorXd::Zero(fn.size()));
    const double elapsed = seconds_since(t0);
    const double face = std::log(std::tan(pi / 8)), vertex = std::log(std::tan(std::acos(std::sqrt(2.0 / 3)) / 2));
    double dev = 0;
    for (int c = 0; c < fn.size(); ++c) {
      const bool corner = cube.graph.degree(fn.adjacency().vertex_of_circle[c]) == 3;
      dev = std::max(dev, std::fabs(res.rho[c] - (corner ? vertex : face)));
    }
    const double resid = fn.closure_residual(res.rho).cwiseAbs().maxCoeff();
    o.detail << " residual=" << resid << " radius_dev=" << dev << " time=" << elapsed << "s";
    o.require(resid <= 1e-10, "closure residual");
    o.require(dev <= 1e-6, "radii");
    o.require(elapsed < 1.0, "runtime");
  });

  run(2, "gradient and Hessian against finite differences", [](Outcome& o) {
    const std::vector<SQuadGraph> graphs{make_refined_cube(2, 2, 2).graph, make_refined_cube(2, 2, 4).graph,
                                         make_zsquare_patch(3, 3).graph};
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    double worst_g = 0, worst_h = 0, max_one = -1e300;
    const double h = 1e-5;
    for (const SQuadGraph& g : graphs) {
      const SphericalFunctional fn = functional_of(g);
      const int n = fn.size();
      for (int t = 0; t < 20; ++t) {
        Eigen::VectorXd rho(n), dir(n);
        for (int i = 0; i < n; ++i) {
          rho[i] = u(rng);
          dir[i] = u(rng);
        }
        const Eigen::VectorXd grad = fn.gradient(rho);
        Eigen::VectorXd fd(n);
        for (int i = 0; i < n; ++i) {
          Eigen::VectorXd p = rho, m = rho;
          p[i] += h;
          m[i] -= h;
          fd[i] = (fn.value(p) - fn.value(m)) / (2 * h);
        }
        worst_g = std::max(worst_g, (fd - grad).norm() / std::max(1.0, grad.norm()));
        const double q = fn.hessian_quadform(rho, dir);
        const double fq = dir.dot(fn.gradient(rho + h * dir) - fn.gradient(rho - h * dir)) / (2 * h);
        worst_h = std::max(worst_h, std::fabs(q - fq) / std::max(1.0, std::fabs(q)));
        max_one = std::max(max_one, fn.hessian_quadform(rho, Eigen::VectorXd::Ones(n)));
      }
    }
    o.detail << " grad_rel=" << worst_g << " hess_rel=" << worst_h << " max_ones_form=" << max_one;
    o.require(worst_g <= 1e-6, "gradient");
    o.require(worst_h <= 1e-5, "Hessian");
    o.require(max_one < 0, "negative along all-ones");
  });

  run(3, "dilogarithm", [](Outcome& o) {
    const double catalan = 0.9159655941772190;
    const double e0 = std::fabs(dilog_F(0.0) - catalan);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-10, 10);
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
      const double x = u(rng);
      worst = std::max(worst, std::fabs(dilog_F(x) - dilog_F(-x) - pi * x / 2));
    }
    o.detail << " F(0)_err=" << e0 << " reflection=" << worst;
    o.require(e0 <= 1e-10, "Catalan value");
    o.require(worst <= 1e-12, "reflection");
  });

  run(4, "Koebe polyhedron of the refined cube", [](Outcome& o) {
    const auto t0 = Clock::now();
    const RefinedCube cube = make_refined_cube(2, 2, 2);
    const SphericalFunctional fn = functional_of(cube.graph);
    const SolveResult res = solve_pattern(fn, Eigen::VectorXd::Zero(fn.size()));
    const KoebePolyhedron k = build_koebe(normalize_pattern(layout_pattern(cube.graph, res.rho)));
    const KoebeResiduals r = koebe_residuals(k);
    const double elapsed = seconds_since(t0);
    o.detail << " orthogonality=" << r.sphere_orthogonality << " tangency=" << r.surface.sphere_tangency
             << " edge_tangency=" << r.edge_tangency << " time=" << elapsed << "s";
    o.require(r.sphere_orthogonality <= 1e-8, "orthogonality");
    o.require(r.surface.sphere_tangency <= 1e-8, "sphere tangency");
    o.require(r.edge_tangency <= 1e-8, "edge tangency");
    o.require(elapsed < 10, "runtime");
  });

  run(5, "Christoffel dualization", [](Outcome& o) {
    double closure = 0, twice = 0, recip = 0;
    for (const SurfaceModel* m : models().all()) {
      closure = std::max(closure, m->minimal.dual.relative_residual());
      const SIsothermicSurface& k = m->koebe.surface;
      const SIsothermicSurface& d = m->minimal.surface;
      for (int v = 0; v < k.vertex_count(); ++v)
        if (!k.is_contact(v) && k.radius[v] > 0 && d.finite(v)) recip = std::max(recip, std::fabs(d.radius[v] * k.radius[v] - 1));
      if (!d.rays.empty()) continue;  // the dual of a surface with ends at infinity is not a finite mesh
      const SIsothermicSurface dd = dual_s_isothermic(d, m->signs);
      const Registration reg = register_similarity(dd.position, k.position, false);
      twice = std::max(twice, reg.scale > 0 ? reg.max_deviation / k.diameter() : 1.0);
    }
    o.detail << " closure=" << closure << " dual_dual=" << twice << " reciprocal=" << recip;
    o.require(closure <= 1e-9, "closure");
    o.require(twice <= 1e-9, "dual of dual");
    o.require(recip <= 1e-8, "reciprocal radii");
  });

  run(6, "minimality and maximum principle", [](Outcome& o) {
    for (const SurfaceModel* m : models().all()) {
      o.detail << " " << m->kind << ":" << m->minimal.max_minimality << "/" << m->minimal.max_hull_distance << "/"
               << m->minimal.interior_sphere_vertices;
      o.require(m->minimal.max_minimality <= 1e-7, m->kind + " minimality");
      o.require(m->minimal.max_hull_distance <= 1e-9, m->kind + " convex hull");
      o.require(m->minimal.interior_sphere_vertices > 0, m->kind + " has interior vertices");
    }
  });

  run(7, "Weierstrass route equals Koebe route", [](Outcome& o) {
    for (const SurfaceModel* m : {&models().enneper, &models().catenoid}) {
      const MinimalSurface w = build_from_weierstrass(*m->planar, m->signs);
      std::vector<Vec3> a, b;
      for (int v = 0; v < w.surface.vertex_count(); ++v)
        if (w.surface.finite(v)) {
          a.push_back(w.surface.position[v]);
          b.push_back(m->minimal.surface.position[v]);
        }
      const double dev = register_similarity(a, b).max_deviation / m->minimal.surface.diameter();
      o.detail << " " << m->kind << "=" << dev;
      o.require(dev <= 1e-8, m->kind);
    }
    const double s2 = std::numbers::sqrt2;
    const Vec3 d = weierstrass_edge(0.0, s2, s2 / 2, 1);
    // Geometric oracle: Koebe spheres of the two circles, dual of the two kite edges.
    auto koebe_center = [](Complex c, double r) {
      const Vec3 q0 = stereographic_project(c + r).vec(), q1 = stereographic_project(c + Complex(0, r)).vec(),
                 q2 = stereographic_project(c - r).vec();
      Vec3 n = (q1 - q0).cross(q2 - q0).normalized();
      double h = n.dot(q0);
      if (n.dot(stereographic_project(c).vec()) < h) {
        n = -n;
        h = -h;
      }
      return Vec3(n / h);
    };
    const Vec3 b = stereographic_project(Complex(s2 / 2)).vec();
    const Vec3 geo = dual_edge(b - koebe_center(0.0, s2 / 2), 1) + dual_edge(koebe_center(s2, s2 / 2) - b, 1);
    const double err = (d - Vec3(0.70711, 0, 2.0)).norm();
    o.detail << " edge=(" << d.transpose() << ") err=" << err << " oracle_gap=" << (geo - d).norm();
    o.require(err <= 1e-5, "worked edge");
    o.require((geo - d).norm() <= 1e-10, "geometric oracle");
  });

  run(8, "associated family of the catenoid", [](Outcome& o) {
    const SurfaceModel& m = models().catenoid;
    const AssociatedFamilyMember zero = associated_family_geometric(m.koebe, m.signs, 0.0, 0, false);
    double closure = 0, radii = 0;
    AssociatedFamilyMember last;
    for (double phi : {0.0, pi / 6, pi / 3, pi / 2, pi}) {
      last = associated_family_geometric(m.koebe, m.signs, phi, 0, false);
      closure = std::max(closure, last.closure_residual);
      for (int v = 0; v < last.surface.vertex_count(); ++v)
        if (last.surface.is_sphere(v))
          radii = std::max(radii, std::fabs(last.surface.radius[v] - zero.surface.radius[v]) / zero.surface.radius[v]);
    }
    std::vector<Vec3> a, b;
    for (int v = 0; v < last.surface.vertex_count(); ++v)
      if (last.surface.is_sphere(v)) {
        a.push_back(zero.surface.position[v]);
        b.push_back(last.surface.position[v]);
      }
    const Registration reg = register_similarity(a, b, false);
    const double reflection = std::max(std::fabs(reg.scale + 1), reg.max_deviation / m.minimal.surface.diameter());
    o.detail << " closure=" << closure << " radii=" << radii << " point_reflection=" << reflection;
    o.require(closure <= 1e-9, "closure");
    o.require(radii <= 1e-9, "radii");
    o.require(reflection <= 1e-12, "phi = pi");
  });

  run(9, "convergence to smooth Enneper", [](Outcome& o) {
    const auto t0 = Clock::now();
    const ConvergenceReport r = convergence_report(SmoothFamily::Enneper, {4, 8, 16, 32});
    const double elapsed = seconds_since(t0);
    o.detail << " errors=";
    for (const auto& l : r.levels) o.detail << l.error << (l.n == 32 ? "" : ",");
    o.detail << " slope=" << r.slope << "+-" << r.slope_stderr << " time=" << elapsed << "s";
    o.require(r.slope >= -1.4 && r.slope <= -0.6, "slope");
    o.require(elapsed < 120, "runtime");
  });

  run(10, "conformal squares and Touching Coins", [](Outcome& o) {
    double cr = 0;
    int faces = 0;
    for (const SurfaceModel* m : models().all())
      for (const SIsothermicSurface* s : {&m->koebe.surface, &m->minimal.surface}) {
        const SurfaceResiduals r = s_isothermic_residuals(*s);
        cr = std::max(cr, r.kite_cross_ratio);
        faces += r.faces_checked;
      }
    const RefinedCube cube = make_refined_cube(2, 2, 2);
    const SphericalFunctional fn = functional_of(cube.graph);
    const SolveResult res = solve_pattern(fn, Eigen::VectorXd::Zero(fn.size()));
    const KoebePolyhedron k = build_koebe(normalize_pattern(layout_pattern(cube.graph, res.rho)));
    const SurfaceResiduals kr = s_isothermic_residuals(k.surface);
    cr = std::max(cr, kr.kite_cross_ratio);
    faces += kr.faces_checked;
    int quads = 0;
    const double coins = touching_coins_residual(k.surface, &quads);
    o.detail << " kite_cr=" << cr << " over " << faces << " faces, touching_coins=" << coins << " over " << quads
             << " quadruples";
    o.require(cr <= 1e-8, "cross-ratio");
    o.require(coins <= 1e-8 && quads > 0, "Touching Coins");
  });

  return failures == 0 ? 0 : 1;
}
