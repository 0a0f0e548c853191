#pragma once

#include <map>
#include <vector>

#include "dmin/geometry.hpp"
#include "dmin/koebe.hpp"
#include "dmin/quadgraph.hpp"

namespace dmin {

/// sign * delta / |delta|^2. Throws GeometryError for a zero-length edge.
Vec3 dual_edge(const Vec3& delta, int sign);

struct DualizationResult {
  std::vector<Vec3> position;
  std::vector<std::uint8_t> at_infinity;
  std::vector<SIsothermicSurface::Ray> rays;
  double closure_residual = 0.0;  // absolute, worst face or co-tree edge
  double diameter = 0.0;          // of the finite dual vertices
  int worst_face = -1;
  int basepoint = 0;
  Vec3 base_image = Vec3::Zero();
  bool signs_flipped = false;     // set when the signs were normalized (first tree edge +)
  double relative_residual() const { return diameter > 0 ? closure_residual / diameter : closure_residual; }
};

/// Integrates the dual 1-form along a breadth-first spanning tree. Degenerate
/// (zero-length) edges become rays; `ray_directions` supplies the primal unit
/// direction per degenerate edge id, pointing toward the vertex at infinity.
/// With `normalize_signs` the global sign is chosen so the first tree edge is
/// '+'; otherwise `signs` is used as given.
/// Throws GeometryError for non-simply-connected input or when the closure
/// residual exceeds `hard_cap` times the dual diameter.
DualizationResult dualize_mesh(const SQuadGraph& g, const std::vector<Vec3>& position, const EdgeSigns& signs,
                               int basepoint = 0, const std::map<int, Vec3>& ray_directions = {},
                               double hard_cap = 1e-5, bool normalize_signs = true);

/// Inscribed-circle polygon dual: l*_j = (-1)^j l_j / (r_j r_{j+1}), j = 1..2n.
std::vector<Vec2> dual_polygon(const std::vector<Vec2>& edges, const std::vector<double>& touch_radii);

/// Christoffel dual of an S-isothermic surface via its central extension.
SIsothermicSurface dual_s_isothermic(const SIsothermicSurface& s, const EdgeSigns& signs, int basepoint = 0,
                                     DualizationResult* info = nullptr, bool normalize_signs = true);

/// Unit direction of each degenerate edge toward its zero-radius sphere end,
/// read off from the sphere touching the same contact.
std::map<int, Vec3> degenerate_edge_directions(const SIsothermicSurface& s);

struct Registration {
  double scale = 1.0;
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Vec3 translation = Vec3::Zero();
  double max_deviation = 0.0;  // after applying the map to `from`
  Vec3 apply(const Vec3& x) const { return scale * (rotation * x) + translation; }
};

/// Least-squares similarity from `from` onto `to`. With `rotate` false only
/// translation and a (signed) scale are fitted.
Registration register_similarity(const std::vector<Vec3>& from, const std::vector<Vec3>& to, bool rotate = true);

}  // namespace dmin
