#pragma once

#include <memory>
#include <vector>

#include "dmin/geometry.hpp"
#include "dmin/pattern.hpp"
#include "dmin/quadgraph.hpp"

namespace dmin {

/// Orthogonal circle pattern in the plane. White vertices carry a circle
/// (center, radius); black vertices carry the contact point of the two
/// touching circle pairs around them.
struct PlanarPattern {
  std::shared_ptr<const SQuadGraph> graph;
  std::vector<std::array<int, 2>> index;  // lattice coordinates per vertex
  std::vector<Complex> center;            // circle center, or contact point at black vertices
  std::vector<double> radius;             // 0 at black vertices
  int i0 = 0, i1 = 0, j0 = 0, j1 = 0;     // lattice window
  int id(int i, int j) const;             // throws if (i, j) is outside the window
};

struct PlanarResiduals {
  double tangency = 0.0;       // | |c1 - c2| - (r1 + r2) | for touching pairs
  double contact_offset = 0.0; // contact point vs c1 + r1 * unit(c2 - c1)
  double orthogonality = 0.0;  // | |c1 - c2|^2 - r1^2 - r2^2 | / (r1 r2) across faces
  int pairs = 0;
};

PlanarResiduals planar_residuals(const PlanarPattern& p);

/// Equal circles of radius r at r (i + j i) for (i, j) with i + j even on the
/// lattice window [-m, m] x [-n, n]; contacts at r (i + j i) for i + j odd.
PlanarPattern enneper_grid_pattern(int m, int n, double r);

/// S-Exp pattern: c = exp(alpha n + i rho m), radius sin(rho) |c| with
/// rho = pi / N and alpha = artanh(sin rho), for n in [n0, n1] and m in [m0, m1].
/// Contacts come from circle tangency.
PlanarPattern sexp_pattern(int N, int n0, int n1, int m0, int m1);

struct SexpParameters {
  double rho = 0.0;
  double alpha = 0.0;
};
SexpParameters sexp_parameters(int N);

/// Stereographic image on S^2: caps are the images of the disks.
SphericalPattern project_to_sphere(const PlanarPattern& p);

}  // namespace dmin
