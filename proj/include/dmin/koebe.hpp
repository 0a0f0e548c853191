#pragma once

#include <array>
#include <memory>
#include <vector>

#include "dmin/geometry.hpp"
#include "dmin/pattern.hpp"
#include "dmin/quadgraph.hpp"

namespace dmin {

/// Spheres, circles and contact points on a quad-graph.
///
/// `position` holds sphere/circle centers at white vertices and contact points
/// at black ones, so it doubles as the central-extension kite mesh. A vertex
/// flagged `at_infinity` is the dual of a zero-radius sphere; its edges are
/// stored as rays.
struct SIsothermicSurface {
  std::shared_ptr<const SQuadGraph> graph;
  std::vector<Label> role;
  std::vector<Vec3> position;
  std::vector<double> radius;
  std::vector<Vec3> normal;  // circle vertices only
  std::vector<std::uint8_t> at_infinity;
  struct Ray {
    int from;      // finite vertex
    int to;        // vertex at infinity
    Vec3 direction;
  };
  std::vector<Ray> rays;

  int vertex_count() const { return static_cast<int>(role.size()); }
  bool is_sphere(int v) const { return role[v] == Label::SphereWhite; }
  bool is_circle(int v) const { return role[v] == Label::CircleWhite; }
  bool is_contact(int v) const { return role[v] == Label::Black; }
  bool finite(int v) const { return !at_infinity[v]; }
  bool face_finite(int f) const;
  Sphere3D sphere(int v) const { return {position[v], radius[v]}; }
  Circle3D circle(int v) const { return {position[v], radius[v], normal[v]}; }
  /// Bounding-box diagonal of the finite vertices.
  double diameter() const;
};

struct KoebePolyhedron {
  SIsothermicSurface surface;  // midsphere is the unit sphere
};

enum class RoleChoice { AsLabeled, Swapped };

/// Spheres orthogonal to S^2 along the sphere-role circles, the circle-role
/// circles kept on S^2, contacts inherited. Throws on great circles.
KoebePolyhedron build_koebe(const SphericalPattern& pattern, RoleChoice choice = RoleChoice::AsLabeled);

struct SurfaceResiduals {
  double sphere_tangency = 0.0;       // | |ci - cj| - (Ri + Rj) | over touching sphere pairs
  double contact_on_sphere = 0.0;     // | |b - c| - R |
  double contact_on_circle = 0.0;     // distance of contacts from their circles
  double circle_sphere_angle = 0.0;   // |cos| of intersection angle for each face pair
  double kite_planarity = 0.0;        // relative out-of-plane distance of the kite's fourth point
  double kite_cross_ratio = 0.0;      // |cr + 1|
  int faces_checked = 0;
  double max() const;
};

struct KoebeResiduals {
  double sphere_orthogonality = 0.0;  // |d^2 - 1 - R^2|
  double circles_on_midsphere = 0.0;  // |center|^2 + r^2 - 1 and normal alignment
  double edge_tangency = 0.0;         // |dist(0, edge) - 1| and contact offset
  SurfaceResiduals surface;
};

SurfaceResiduals s_isothermic_residuals(const SIsothermicSurface& s);
KoebeResiduals koebe_residuals(const KoebePolyhedron& k);

/// Kite mesh of the central extension (faces as in the graph).
struct KiteMesh {
  std::shared_ptr<const SQuadGraph> graph;
  std::vector<Vec3> position;
};
KiteMesh central_extension(const SIsothermicSurface& s);

/// Angle defect between a circle and a sphere: cos of the intersection angle.
double circle_sphere_cosine(const Circle3D& c, const Sphere3D& s);

struct TouchingCoinsResult {
  double residual = 0.0;
  bool indeterminate = false;  // contact points coplanar: no unique sphere
};

/// Four cyclically tangent circles (c_i touches c_{i+1}): the sphere through
/// the contact points must meet each circle orthogonally.
TouchingCoinsResult check_touching_coins(const std::array<Circle3D, 4>& circles);

/// Worst Touching Coins residual over the circle quadruples around the
/// degree-4 sphere vertices; `checked` receives the number of quadruples.
double touching_coins_residual(const SIsothermicSurface& s, int* checked = nullptr);

}  // namespace dmin
