#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dmin/minimal.hpp"
#include "dmin/pattern.hpp"
#include "dmin/planar_pattern.hpp"

namespace dmin {

/// Everything a constructor produced on the way to its minimal surface. The
/// pattern, Koebe polyhedron and minimal surface share `minimal.surface.graph`.
struct SurfaceModel {
  std::string kind;
  std::map<std::string, double> parameters;
  std::optional<PlanarPattern> planar;
  SphericalPattern pattern;
  KoebePolyhedron koebe;
  EdgeSigns signs;
  MinimalSurface minimal;
  std::optional<SolveResult> solve;       // when a spherical solve was needed
  std::vector<int> source_vertex;         // vertex -> vertex of the uncut graph (identity if uncut)
  std::vector<Vec3> periods;              // translation periods of the cut piece
  std::vector<Vec3> end_normals;          // Scherk ends
  double ring_closure = 0.0;              // catenoid seam mismatch, relative to diameter
  double touching_coins = 0.0;
  int touching_coins_checked = 0;
};

/// Lattice window [-n, n]^2 with circle radius 1 / (n sqrt 2), so the planar
/// pattern covers a fixed square as n grows.
SurfaceModel make_enneper(int n);

/// S-Exp pattern, n in [-rows, rows], m in [0, 2N]: the seam m = 0 ~ 2N is cut open.
SurfaceModel make_catenoid(int N, int rows);

/// Fundamental piece cut from the branched double cover of the refined cube.
SurfaceModel make_schwarz_p(int m, int n, int k);

/// Scherk tower with four flagged ends; `truncation` is the exported ray length.
SurfaceModel make_scherk(int m, int n, double truncation);

/// Surface of a pattern on a planar window via projection, Koebe, dualization.
SurfaceModel planar_route(const PlanarPattern& p, const std::string& kind);

enum class SmoothFamily { Enneper, Catenoid };

/// Closed-form Weierstrass surfaces: g(z) = z gives Re(z - z^3/3, i(z + z^3/3), z^2);
/// g(z) = e^z gives Re(-2 cosh z, 2i sinh z, 2z).
Vec3 smooth_weierstrass(SmoothFamily family, Complex z);

struct ConvergenceLevel {
  int n = 0;
  double error = 0.0;       // sup over the sample grid
  double center_error = 0.0;
  double seconds = 0.0;
  int vertices = 0;
};

struct ConvergenceReport {
  SmoothFamily family = SmoothFamily::Enneper;
  std::vector<ConvergenceLevel> levels;
  double slope = 0.0;
  double slope_stderr = 0.0;
  double compact_half_width = 0.0;
  int samples_per_side = 0;
};

/// Builds each level, rescales it as in the O(1/n) estimate, aligns it to the
/// smooth surface by the mean translation over the sample grid and records the
/// sup-norm error at nearest sphere vertices.
ConvergenceReport convergence_report(SmoothFamily family, const std::vector<int>& levels,
                                     double compact_half_width = 0.5, int samples_per_side = 101);

}  // namespace dmin
