#pragma once

#include <vector>

#include "dmin/christoffel.hpp"
#include "dmin/koebe.hpp"
#include "dmin/planar_pattern.hpp"

namespace dmin {

/// Vertex-wise minimality test at an interior sphere vertex x with contacts
/// b_1..b_2n (taken relative to the center). With a_j = (-1)^j b_j:
///  - `circle`: distance of the points x + a_j from the circle through the first three;
///  - `normal`: residual of the least-squares N with a_j . N = const, in length units;
///  - `plane_split`: max |a_j . N - mean| for the best-fit plane normal N.
/// All three vanish together on a discrete minimal surface.
struct MinimalityCheck {
  double circle = 0.0;
  double normal_condition = 0.0;
  double plane_split = 0.0;
  Vec3 normal = Vec3::Zero();
  double max() const;
};

/// Throws GeometryError if `vertex` is not a finite sphere vertex with at
/// least four finite contacts.
MinimalityCheck check_minimal_condition(const SIsothermicSurface& s, int vertex);

struct MinimalSurface {
  SIsothermicSurface surface;
  DualizationResult dual;                 // empty unless produced by dualization
  std::vector<MinimalityCheck> vertex;    // per vertex; meaningful where `checked`
  std::vector<std::uint8_t> checked;
  std::vector<double> hull_distance;      // maximum principle, per interior vertex
  double max_minimality = 0.0;            // worst plane_split/circle/normal, relative to diameter
  double max_hull_distance = 0.0;         // relative to diameter
  double gauss_alignment = 0.0;           // 1 - |N . Koebe normal|, where a Koebe polyhedron is known
  int interior_sphere_vertices = 0;
};

/// Fills the per-vertex minimality and maximum-principle data.
void assess_minimality(MinimalSurface& m);

/// True for the vertices at which the minimality test applies.
bool is_interior_sphere_vertex(const SIsothermicSurface& s, int v);

MinimalSurface dualize_koebe_to_minimal(const KoebePolyhedron& k, const EdgeSigns& signs, int basepoint = 0,
                                        bool normalize_signs = true);

// Weierstrass-type representation -------------------------------------------

/// |(1 + |c|^2 - |c - p|^2) / (2 |c - p|)|; throws for c == p.
double weierstrass_sphere_radius(Complex c, Complex p);

/// Sphere-center step from the circle at c1 to the touching circle at c2
/// through the contact p, rotated by phi in the associated family.
Vec3 weierstrass_edge(Complex c1, Complex c2, Complex p, int sign, double phi = 0.0);

/// Integrates weierstrass_edge over the sphere vertices (through their
/// contacts). Contacts are placed on the segment between touching centers;
/// circles are fitted through coplanar, concyclic contacts and otherwise left
/// flagged at_infinity. Throws with the
/// offending cycle when the closure residual exceeds `tol` times the diameter.
MinimalSurface build_from_weierstrass(const PlanarPattern& p, const EdgeSigns& signs, double phi = 0.0,
                                      double tol = 1e-9);

// Associated family ------------------------------------------------------------

struct AssociatedFamilyMember {
  double phi = 0.0;
  SIsothermicSurface surface;  // circles only where four contacts are concyclic
  double closure_residual = 0.0;  // worst cycle, relative to diameter
  int circles = 0;
};

/// Rotates each Koebe edge by phi about the midsphere normal at its contact
/// and integrates the dual edges (-1)^j l_j / (r_j r_{j+1}). phi = 0 reproduces
/// dualize_koebe_to_minimal.
AssociatedFamilyMember associated_family_geometric(const KoebePolyhedron& k, const EdgeSigns& signs, double phi,
                                                   int basepoint = 0, bool normalize_signs = true);

}  // namespace dmin
