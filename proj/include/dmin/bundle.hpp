#pragma once

#include <map>
#include <string>
#include <vector>

#include "dmin/koebe.hpp"
#include "dmin/quadgraph.hpp"

namespace dmin {

/// Serializable snapshot of an S-isothermic surface plus construction
/// metadata. Spheres, circles and contacts are the vertices by role; the kite
/// mesh is the face list over `position`.
struct GeometryBundle {
  std::string kind;
  std::map<std::string, double> parameters;
  std::vector<Label> labels;
  std::vector<Face> faces;
  std::vector<Vec3> position;
  std::vector<double> radius;
  std::vector<Vec3> normal;
  std::vector<std::uint8_t> at_infinity;
  std::vector<int> branch_vertices;
  std::vector<SIsothermicSurface::Ray> rays;  // `to` is -1 for ends cut from the piece
  std::vector<Vec3> periods;
  std::map<std::string, double> residuals;

  bool operator==(const GeometryBundle&) const;
};

/// Residual summary. Minimality and the maximum principle are included
/// unless `kind` is "koebe" (a Koebe polyhedron is not minimal).
std::map<std::string, double> compute_residuals(const SIsothermicSurface& s, const std::string& kind);

GeometryBundle make_bundle(const SIsothermicSurface& s, const std::string& kind,
                           const std::map<std::string, double>& parameters, const std::vector<Vec3>& periods = {});

/// Rebuilds the surface (graph from labels and faces).
SIsothermicSurface surface_from_bundle(const GeometryBundle& b);

/// Shortest round-trip JSON text; `bundle_from_json` inverts it exactly.
std::string bundle_to_json(const GeometryBundle& b);
GeometryBundle bundle_from_json(const std::string& text);

struct BundleCheck {
  bool consistent = true;  // stored residuals match the recomputed ones
  bool within_tolerance = true;
  std::map<std::string, double> recomputed;
  std::vector<std::string> problems;
  bool ok() const { return consistent && within_tolerance; }
};

/// Recomputes the residuals and compares them with the stored summary and
/// with `tolerance` (relative to the diameter where the residual is a length).
BundleCheck validate_bundle(const GeometryBundle& b, double tolerance = 1e-7);

}  // namespace dmin
