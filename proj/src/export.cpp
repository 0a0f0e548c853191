#include "dmin/export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dmin {

void icosphere(int level, std::vector<Vec3>& v, std::vector<std::array<int, 3>>& t) {
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  v = {{-1, p, 0}, {1, p, 0}, {-1, -p, 0}, {1, -p, 0}, {0, -1, p}, {0, 1, p},
       {0, -1, -p}, {0, 1, -p}, {p, 0, -1}, {p, 0, 1}, {-p, 0, -1}, {-p, 0, 1}};
  for (Vec3& x : v) x.normalize();
  t = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
       {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
       {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      v.push_back((v[a] + v[b]).normalized());
      return mid[key] = static_cast<int>(v.size()) - 1;
    };
    std::vector<std::array<int, 3>> next;
    for (const auto& [a, b, c] : t) {
      const int ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
      next.push_back({a, ab, ca});
      next.push_back({b, bc, ab});
      next.push_back({c, ca, bc});
      next.push_back({ab, bc, ca});
    }
    t = std::move(next);
  }
}

namespace {

class ObjWriter {
 public:
  int vertex(const Vec3& x) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", x.x(), x.y(), x.z());
    out_ << buf;
    return ++count_;
  }
  std::ostringstream& stream() { return out_; }

 private:
  std::ostringstream out_;
  int count_ = 0;
};

}  // namespace

std::string export_obj(const GeometryBundle& b, const ObjOptions& opt) {
  if (opt.sphere_level < 0 || opt.circle_segments < 3) throw std::invalid_argument("invalid OBJ options");
  ObjWriter w;
  w.stream() << "# discrete minimal surface: " << (b.kind.empty() ? "empty" : b.kind) << "\n";

  std::vector<int> index(b.position.size(), 0);
  bool kite_group = false;
  for (const Face& f : b.faces) {
    bool finite = true;
    for (int v : f) finite &= !b.at_infinity[v];
    if (!finite) continue;
    if (!kite_group) {
      w.stream() << "o kites\n";
      kite_group = true;
    }
    for (int v : f)
      if (!index[v]) index[v] = w.vertex(b.position[v]);
    w.stream() << "f " << index[f[0]] << ' ' << index[f[1]] << ' ' << index[f[2]] << ' ' << index[f[3]] << "\n";
  }

  std::vector<Vec3> ico;
  std::vector<std::array<int, 3>> tri;
  icosphere(opt.sphere_level, ico, tri);
  for (size_t v = 0; v < b.labels.size(); ++v) {
    if (b.labels[v] != Label::SphereWhite || b.at_infinity[v] || !(b.radius[v] > 0)) continue;
    w.stream() << "o sphere_" << v << "\n";
    int first = 0;
    for (const Vec3& x : ico) {
      const int id = w.vertex(b.position[v] + b.radius[v] * x);
      if (!first) first = id;
    }
    for (const auto& [p, q, r] : tri) w.stream() << "f " << first + p << ' ' << first + q << ' ' << first + r << "\n";
  }
  for (size_t v = 0; v < b.labels.size(); ++v) {
    if (b.labels[v] != Label::CircleWhite || b.at_infinity[v] || !(b.radius[v] > 0)) continue;
    const Circle3D c{b.position[v], b.radius[v], b.normal[v]};
    w.stream() << "o circle_" << v << "\n";
    int first = 0;
    for (int k = 0; k < opt.circle_segments; ++k) {
      const int id = w.vertex(c.point(2.0 * std::numbers::pi * k / opt.circle_segments));
      if (!first) first = id;
    }
    w.stream() << "l";
    for (int k = 0; k <= opt.circle_segments; ++k) w.stream() << ' ' << first + k % opt.circle_segments;
    w.stream() << "\n";
  }
  for (size_t i = 0; i < b.rays.size(); ++i) {
    const auto& r = b.rays[i];
    w.stream() << "o end_" << i << "\n";
    const int a = w.vertex(b.position[r.from]);
    const int c = w.vertex(b.position[r.from] + opt.truncation * r.direction.normalized());
    w.stream() << "l " << a << ' ' << c << "\n";
  }
  return w.stream().str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace dmin
