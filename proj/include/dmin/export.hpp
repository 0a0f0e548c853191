#pragma once

#include <string>

#include "dmin/bundle.hpp"

namespace dmin {

struct ObjOptions {
  int sphere_level = 1;      // icosahedron subdivisions
  int circle_segments = 48;
  double truncation = 1.0;   // length of exported rays
};

/// Deterministic OBJ text: kite faces, subdivided icosahedra for spheres,
/// closed polylines for circles and truncated ray segments.
std::string export_obj(const GeometryBundle& b, const ObjOptions& options = {});

/// Unit icosphere (vertices, triangles) after `level` subdivisions.
void icosphere(int level, std::vector<Vec3>& vertices, std::vector<std::array<int, 3>>& triangles);

/// Writes `text` to `path`; throws std::runtime_error if the file cannot be written.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace dmin
