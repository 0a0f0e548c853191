#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "dmin/parallel.hpp"
#include "dmin/surfaces.hpp"

namespace dmin {

namespace {

struct Level {
  SurfaceModel model;
  double scale = 1.0;
  double step_re = 0.0, step_im = 0.0;  // lattice spacing of each coordinate
  Complex center;
  // Sphere vertex nearest to a point of the parameter domain.
  int nearest(Complex z) const {
    const auto even = [](double t, double h) { return 2 * static_cast<int>(std::lround(t / (2 * h))); };
    return model.planar->id(even(z.real(), step_re), even(z.imag(), step_im));
  }
};

Level build_level(SmoothFamily family, int n, double half) {
  Level l;
  if (family == SmoothFamily::Enneper) {
    l.model = make_enneper(n);
    const double r = 1.0 / (n * std::numbers::sqrt2);
    l.scale = 2 * r * r;
    l.step_re = l.step_im = r;
    l.center = 0.0;
    return l;
  }
  const SexpParameters sp = sexp_parameters(n);
  const int rows = 2 * static_cast<int>(std::ceil(half / (2 * sp.alpha))) + 2;
  l.model = make_catenoid(n, rows);
  l.scale = 2 * std::sin(sp.rho) * std::sin(sp.rho);
  l.step_re = sp.alpha;
  l.step_im = sp.rho;
  l.center = Complex(0.0, std::numbers::pi);
  return l;
}

}  // namespace

ConvergenceReport convergence_report(SmoothFamily family, const std::vector<int>& ns, double half, int samples) {
  if (ns.size() < 3 || !std::is_sorted(ns.begin(), ns.end())) throw GeometryError("need at least 3 ascending levels");
  if (samples < 2) throw GeometryError("need at least 2 samples per side");
  ConvergenceReport rep;
  rep.family = family;
  rep.compact_half_width = half;
  rep.samples_per_side = samples;
  rep.levels.resize(ns.size());
  parallel_for(static_cast<int>(ns.size()), [&](int idx) {
    const auto t0 = std::chrono::steady_clock::now();
    ConvergenceLevel& out = rep.levels[idx];
    out.n = ns[idx];
    Level l = build_level(family, ns[idx], half);
    const SIsothermicSurface& f = l.model.minimal.surface;
    out.vertices = f.vertex_count();
    std::vector<Complex> zs;
    std::vector<Vec3> diff;
    for (int a = 0; a < samples; ++a)
      for (int b = 0; b < samples; ++b) {
        const Complex z = l.center + Complex(-half + 2 * half * a / (samples - 1), -half + 2 * half * b / (samples - 1));
        const int v = l.nearest(z);
        zs.push_back(z);
        diff.push_back(smooth_weierstrass(family, z) - l.scale * f.position[v]);
      }
    Vec3 shift = Vec3::Zero();
    for (const Vec3& d : diff) shift += d;
    shift /= static_cast<double>(diff.size());
    for (size_t s = 0; s < diff.size(); ++s) {
      const double e = (diff[s] - shift).norm();
      out.error = std::max(out.error, e);
      if (std::abs(zs[s] - l.center) < 1e-12) out.center_error = e;
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  });
  // Least-squares slope of log(error) against log(n).
  const int k = static_cast<int>(rep.levels.size());
  double mx = 0, my = 0;
  for (const auto& l : rep.levels) {
    mx += std::log(l.n) / k;
    my += std::log(l.error) / k;
  }
  double sxx = 0, sxy = 0;
  for (const auto& l : rep.levels) {
    sxx += (std::log(l.n) - mx) * (std::log(l.n) - mx);
    sxy += (std::log(l.n) - mx) * (std::log(l.error) - my);
  }
  rep.slope = sxy / sxx;
  double sse = 0;
  for (const auto& l : rep.levels) {
    const double r = std::log(l.error) - my - rep.slope * (std::log(l.n) - mx);
    sse += r * r;
  }
  rep.slope_stderr = k > 2 ? std::sqrt(sse / (k - 2) / sxx) : 0.0;
  return rep;
}

}  // namespace dmin
