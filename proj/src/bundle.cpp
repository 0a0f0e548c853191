#include "dmin/bundle.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "dmin/minimal.hpp"

namespace dmin {

using nlohmann::json;

bool GeometryBundle::operator==(const GeometryBundle& o) const {
  auto same_rays = [&] {
    if (rays.size() != o.rays.size()) return false;
    for (size_t i = 0; i < rays.size(); ++i)
      if (rays[i].from != o.rays[i].from || rays[i].to != o.rays[i].to || rays[i].direction != o.rays[i].direction)
        return false;
    return true;
  };
  return kind == o.kind && parameters == o.parameters && labels == o.labels && faces == o.faces &&
         position == o.position && radius == o.radius && normal == o.normal && at_infinity == o.at_infinity &&
         branch_vertices == o.branch_vertices && same_rays() && periods == o.periods && residuals == o.residuals;
}

std::map<std::string, double> compute_residuals(const SIsothermicSurface& s, const std::string& kind) {
  const SurfaceResiduals r = s_isothermic_residuals(s);
  std::map<std::string, double> out{{"sphere_tangency", r.sphere_tangency},
                                    {"contact_on_sphere", r.contact_on_sphere},
                                    {"contact_on_circle", r.contact_on_circle},
                                    {"circle_sphere_angle", r.circle_sphere_angle},
                                    {"kite_planarity", r.kite_planarity},
                                    {"kite_cross_ratio", r.kite_cross_ratio}};
  if (kind == "koebe") {
    out["touching_coins"] = touching_coins_residual(s);
  } else {
    MinimalSurface m;
    m.surface = s;
    assess_minimality(m);
    out["minimality"] = m.max_minimality;
    out["hull_distance"] = m.max_hull_distance;
  }
  return out;
}

GeometryBundle make_bundle(const SIsothermicSurface& s, const std::string& kind,
                           const std::map<std::string, double>& parameters, const std::vector<Vec3>& periods) {
  GeometryBundle b;
  b.kind = kind;
  b.parameters = parameters;
  const SQuadGraph& g = *s.graph;
  b.labels = s.role;
  b.faces = g.faces();
  b.position = s.position;
  b.radius = s.radius;
  b.normal = s.normal;
  b.at_infinity = s.at_infinity;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.has_flag(v, kFlagBranch)) b.branch_vertices.push_back(v);
  b.rays = s.rays;
  b.periods = periods;
  b.residuals = compute_residuals(s, kind);
  return b;
}

SIsothermicSurface surface_from_bundle(const GeometryBundle& b) {
  const size_t n = b.labels.size();
  if (b.position.size() != n || b.radius.size() != n || b.normal.size() != n || b.at_infinity.size() != n)
    throw GeometryError("bundle arrays disagree in length");
  std::vector<std::uint8_t> flags(n, 0);
  for (int v : b.branch_vertices) flags.at(v) |= kFlagBranch;
  SIsothermicSurface s;
  s.graph = std::make_shared<const SQuadGraph>(b.labels, b.faces, flags);
  s.role = b.labels;
  s.position = b.position;
  s.radius = b.radius;
  s.normal = b.normal;
  s.at_infinity = b.at_infinity;
  s.rays = b.rays;
  return s;
}

namespace {

json vec(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }
Vec3 vec(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }

}  // namespace

std::string bundle_to_json(const GeometryBundle& b) {
  json j;
  j["kind"] = b.kind;
  j["parameters"] = b.parameters;
  json verts = json::array(), spheres = json::array(), circles = json::array(), contacts = json::array();
  for (size_t v = 0; v < b.labels.size(); ++v) {
    verts.push_back({{"label", label_name(b.labels[v])},
                     {"position", vec(b.position[v])},
                     {"radius", b.radius[v]},
                     {"normal", vec(b.normal[v])},
                     {"at_infinity", b.at_infinity[v] != 0}});
    if (b.at_infinity[v]) continue;
    // Role views for consumers; import reads only "vertices".
    switch (b.labels[v]) {
      case Label::SphereWhite:
        spheres.push_back({{"vertex", v}, {"center", vec(b.position[v])}, {"radius", b.radius[v]}});
        break;
      case Label::CircleWhite:
        circles.push_back({{"vertex", v}, {"center", vec(b.position[v])}, {"radius", b.radius[v]}, {"normal", vec(b.normal[v])}});
        break;
      case Label::Black:
        contacts.push_back({{"vertex", v}, {"position", vec(b.position[v])}});
        break;
    }
  }
  j["vertices"] = verts;
  j["faces"] = b.faces;
  j["spheres"] = spheres;
  j["circles"] = circles;
  j["contacts"] = contacts;
  j["flags"] = {{"branch", b.branch_vertices}};
  json rays = json::array(), ends = json::array();
  for (const auto& r : b.rays) {
    rays.push_back({{"from", r.from}, {"to", r.to}, {"direction", vec(r.direction)}});
    ends.push_back(r.from);
  }
  j["rays"] = rays;
  j["flags"]["ends"] = ends;
  json periods = json::array();
  for (const Vec3& p : b.periods) periods.push_back(vec(p));
  j["periods"] = periods;
  j["metadata"] = {{"residuals", b.residuals}};
  return j.dump(1) + "\n";
}

GeometryBundle bundle_from_json(const std::string& text) {
  GeometryBundle b;
  try {
    const json j = json::parse(text);
    b.kind = j.at("kind").get<std::string>();
    b.parameters = j.at("parameters").get<std::map<std::string, double>>();
    for (const json& v : j.at("vertices")) {
      b.labels.push_back(label_from_name(v.at("label").get<std::string>()));
      b.position.push_back(vec(v.at("position")));
      b.radius.push_back(v.at("radius").get<double>());
      b.normal.push_back(vec(v.at("normal")));
      b.at_infinity.push_back(v.at("at_infinity").get<bool>() ? 1 : 0);
    }
    b.faces = j.at("faces").get<std::vector<Face>>();
    b.branch_vertices = j.at("flags").at("branch").get<std::vector<int>>();
    for (const json& r : j.at("rays")) b.rays.push_back({r.at("from").get<int>(), r.at("to").get<int>(), vec(r.at("direction"))});
    for (const json& p : j.at("periods")) b.periods.push_back(vec(p));
    b.residuals = j.at("metadata").at("residuals").get<std::map<std::string, double>>();
  } catch (const json::exception& e) {
    throw GeometryError(std::string("malformed bundle: ") + e.what());
  }
  return b;
}

BundleCheck validate_bundle(const GeometryBundle& b, double tolerance) {
  BundleCheck c;
  const SIsothermicSurface s = surface_from_bundle(b);
  c.recomputed = compute_residuals(s, b.kind);
  for (const auto& [name, value] : c.recomputed) {
    const auto it = b.residuals.find(name);
    if (it == b.residuals.end()) {
      c.consistent = false;
      c.problems.push_back("missing stored residual " + name);
    } else if (std::fabs(it->second - value) > 1e-12 + 1e-3 * std::fabs(value)) {
      c.consistent = false;
      std::ostringstream msg;
      msg << name << ": stored " << it->second << " but recomputed " << value;
      c.problems.push_back(msg.str());
    }
    if (!(value <= tolerance)) {
      c.within_tolerance = false;
      std::ostringstream msg;
      msg << name << " = " << value << " exceeds " << tolerance;
      c.problems.push_back(msg.str());
    }
  }
  return c;
}

}  // namespace dmin
