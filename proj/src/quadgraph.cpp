#include "dmin/quadgraph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace dmin {

namespace {

std::uint64_t key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

std::uint64_t undirected_key(int a, int b) { return a < b ? key(a, b) : key(b, a); }

}  // namespace

const char* label_name(Label l) {
  switch (l) {
    case Label::CircleWhite: return "circle";
    case Label::SphereWhite: return "sphere";
    case Label::Black: return "black";
  }
  return "?";
}

Label label_from_name(const std::string& s) {
  if (s == "circle") return Label::CircleWhite;
  if (s == "sphere") return Label::SphereWhite;
  if (s == "black") return Label::Black;
  throw GraphError("unknown vertex label '" + s + "'");
}

SQuadGraph::SQuadGraph(std::vector<Label> labels, std::vector<Face> faces,
                       std::vector<std::uint8_t> flags, std::vector<Edge> degenerate_edges)
    : labels_(std::move(labels)), faces_(std::move(faces)), flags_(std::move(flags)) {
  const int nv = vertex_count();
  flags_.resize(nv, kFlagNone);
  incident_edges_.resize(nv);

  for (int f = 0; f < face_count(); ++f) {
    const Face& fc = faces_[f];
    for (int v : fc)
      if (v < 0 || v >= nv) throw GraphError("face " + std::to_string(f) + " references vertex out of range");
    for (int i = 0; i < 4; ++i) {
      const int a = fc[i], b = fc[(i + 1) % 4];
      if (a == b) continue;
      auto [it, inserted] = edge_lookup_.try_emplace(undirected_key(a, b), edge_count());
      if (inserted) {
        edges_.push_back({a, b});
        edge_faces_.push_back({f, -1});
        edge_face_count_.push_back(1);
        incident_edges_[a].push_back(it->second);
        incident_edges_[b].push_back(it->second);
      } else {
        const int e = it->second;
        if (edge_face_count_[e] >= 2) {
          overused_edge_ = true;
        } else {
          edge_faces_[e][1] = f;
        }
        ++edge_face_count_[e];
      }
      if (!directed_lookup_.try_emplace(key(a, b), f).second) orientation_clash_ = true;
    }
  }

  degenerate_.assign(edges_.size(), false);
  for (const auto& de : degenerate_edges) {
    auto id = edge_id(de[0], de[1]);
    if (!id) throw GraphError("degenerate edge is not an edge of the graph");
    degenerate_[*id] = true;
  }

  for (int v = 0; v < nv; ++v) flags_[v] &= static_cast<std::uint8_t>(~kFlagBoundary);
  for (int e = 0; e < edge_count(); ++e)
    if (edge_face_count_[e] == 1) {
      flags_[edges_[e][0]] |= kFlagBoundary;
      flags_[edges_[e][1]] |= kFlagBoundary;
    }
  for (int v = 0; v < nv; ++v)
    if (incident_edges_[v].empty()) flags_[v] |= kFlagBoundary;
}

std::optional<int> SQuadGraph::edge_id(int a, int b) const {
  auto it = edge_lookup_.find(undirected_key(a, b));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> SQuadGraph::degenerate_edges() const {
  std::vector<int> out;
  for (int e = 0; e < edge_count(); ++e)
    if (degenerate_[e]) out.push_back(e);
  return out;
}

std::optional<int> SQuadGraph::face_with_directed_edge(int a, int b) const {
  auto it = directed_lookup_.find(key(a, b));
  if (it == directed_lookup_.end()) return std::nullopt;
  return it->second;
}

int SQuadGraph::corner_index(int f, int v) const {
  for (int i = 0; i < 4; ++i)
    if (faces_[f][i] == v) return i;
  return -1;
}

std::vector<int> SQuadGraph::faces_around(int v) const {
  std::vector<int> out;
  if (incident_edges_[v].empty()) return out;

  // Pick a start face; on the boundary, the one with no predecessor.
  int start = -1;
  for (int e : incident_edges_[v]) {
    const int f = edge_faces_[e][0];
    const int i = corner_index(f, v);
    if (i < 0) continue;
    if (start < 0) start = f;
    const int next = faces_[f][(i + 1) % 4];
    if (!face_with_directed_edge(next, v)) {
      start = f;
      break;
    }
  }
  if (start < 0) return out;

  int f = start;
  const int limit = 2 * degree(v) + 2;
  for (int guard = 0; guard < limit; ++guard) {
    out.push_back(f);
    const int i = corner_index(f, v);
    const int prev = faces_[f][(i + 3) % 4];
    auto nf = face_with_directed_edge(v, prev);
    if (!nf || *nf == start) break;
    f = *nf;
  }
  return out;
}

std::vector<int> SQuadGraph::cyclic_neighbors(int v) const {
  std::vector<int> out;
  const auto fs = faces_around(v);
  for (int f : fs) out.push_back(faces_[f][(corner_index(f, v) + 1) % 4]);
  if (is_boundary_vertex(v) && !fs.empty()) {
    const int f = fs.back();
    out.push_back(faces_[f][(corner_index(f, v) + 3) % 4]);
  }
  return out;
}

int SQuadGraph::component_count() const {
  const int nv = vertex_count();
  std::vector<int> comp(nv, -1);
  int count = 0;
  for (int s = 0; s < nv; ++s) {
    if (comp[s] >= 0) continue;
    std::deque<int> q{s};
    comp[s] = count;
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      for (int e : incident_edges_[v]) {
        const int w = other_end(e, v);
        if (comp[w] < 0) {
          comp[w] = count;
          q.push_back(w);
        }
      }
    }
    ++count;
  }
  return count;
}

bool SQuadGraph::is_consistently_oriented() const { return !orientation_clash_ && !overused_edge_; }

bool SQuadGraph::is_simply_connected() const {
  if (!is_consistently_oriented() || component_count() != 1) return false;
  bool closed = true;
  for (int e = 0; e < edge_count(); ++e)
    if (edge_face_count_[e] == 1) closed = false;
  return euler_characteristic() == (closed ? 2 : 1);
}

bool ValidationReport::has(IssueKind k) const {
  return std::any_of(issues.begin(), issues.end(), [k](const auto& i) { return i.kind == k; });
}

ValidationReport validate(const SQuadGraph& g) {
  ValidationReport rep;
  auto add = [&](IssueKind k, std::vector<int> vs, std::vector<int> fs, std::string msg) {
    rep.issues.push_back({k, std::move(vs), std::move(fs), std::move(msg)});
  };

  for (int f = 0; f < g.face_count(); ++f) {
    const Face& fc = g.face(f);
    bool repeated = false;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        if (fc[a] == fc[b]) repeated = true;
    if (repeated) {
      add(IssueKind::RepeatedVertexInFace, {fc.begin(), fc.end()}, {f},
          "face " + std::to_string(f) + " repeats a vertex");
      continue;
    }
    // Bipartite with alternating colors around the face.
    for (int i = 0; i < 4; ++i) {
      const int a = fc[i], b = fc[(i + 1) % 4];
      if (g.is_black(a) == g.is_black(b))
        add(IssueKind::NotBipartite, {a, b}, {f},
            "edge (" + std::to_string(a) + "," + std::to_string(b) + ") joins two " +
                (g.is_black(a) ? "black" : "white") + " vertices");
    }
    int nc = 0, ns = 0;
    for (int v : fc) {
      nc += g.label(v) == Label::CircleWhite;
      ns += g.label(v) == Label::SphereWhite;
    }
    if (nc != 1 || ns != 1)
      add(IssueKind::FaceWhiteLabels, {fc.begin(), fc.end()}, {f},
          "face " + std::to_string(f) +
              " must have one circle and one sphere white vertex (S-quad-graph condition iii)");
  }

  for (int e = 0; e < g.edge_count(); ++e)
    if (g.edge_face_count(e) > 2)
      add(IssueKind::EdgeOverused, {g.edge(e)[0], g.edge(e)[1]}, {},
          "edge bounds more than two faces");

  if (!g.is_consistently_oriented()) {
    for (int e = 0; e < g.edge_count(); ++e) {
      if (g.edge_face_count(e) != 2) continue;
      const auto [f0, f1] = g.edge_faces(e);
      const int a = g.edge(e)[0], b = g.edge(e)[1];
      auto dir = [&](int f) {
        const int i = g.corner_index(f, a);
        return g.face(f)[(i + 1) % 4] == b;
      };
      if (dir(f0) == dir(f1))
        add(IssueKind::OrientationMismatch, {a, b}, {f0, f1},
            "faces " + std::to_string(f0) + " and " + std::to_string(f1) +
                " induce the same orientation on their common edge");
    }
  }

  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.is_boundary_vertex(v)) continue;
    const int d = g.degree(v);
    if (g.is_black(v) && d != 4)
      add(IssueKind::InteriorBlackDegree, {v}, {},
          "interior black vertex " + std::to_string(v) + " has degree " + std::to_string(d));
    if (d % 2 != 0 && !g.has_flag(v, kFlagBranch))
      add(IssueKind::InteriorOddDegree, {v}, {},
          "interior vertex " + std::to_string(v) + " has odd degree " + std::to_string(d));
  }
  return rep;
}

EdgeSigns EdgeSigns::flipped() const {
  std::vector<std::int8_t> s = signs_;
  for (auto& x : s) x = static_cast<std::int8_t>(-x);
  return EdgeSigns(std::move(s));
}

EdgeSigns assign_edge_signs(const SQuadGraph& g) {
  if (!g.is_consistently_oriented()) throw GraphError("edge signs: quad complex is not orientable");
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!g.is_boundary_vertex(v) && g.degree(v) % 2 != 0)
      throw GraphError("edge signs: parity obstruction at interior vertex " + std::to_string(v) +
                       " of odd degree " + std::to_string(g.degree(v)));
  if (!g.is_simply_connected()) throw GraphError("edge signs: quad complex is not simply connected");

  std::vector<std::int8_t> sign(g.edge_count(), 0);
  std::deque<int> queue;
  auto set = [&](int e, std::int8_t s) {
    if (sign[e] == 0) {
      sign[e] = s;
      queue.push_back(e);
    } else if (sign[e] != s) {
      throw GraphError("edge signs: inconsistent labeling at edge " + std::to_string(e));
    }
  };
  if (g.edge_count() > 0) set(0, 1);
  while (!queue.empty()) {
    const int e = queue.front();
    queue.pop_front();
    for (int f : g.edge_faces(e)) {
      if (f < 0) continue;
      const Face& fc = g.face(f);
      int pos = -1;
      for (int i = 0; i < 4; ++i) {
        const int a = fc[i], b = fc[(i + 1) % 4];
        if (g.edge_id(a, b) == e) pos = i;
      }
      for (int k = 1; k < 4; ++k) {
        const int i = (pos + k) % 4;
        const int other = *g.edge_id(fc[i], fc[(i + 1) % 4]);
        set(other, static_cast<std::int8_t>(k == 2 ? sign[e] : -sign[e]));
      }
    }
  }
  for (auto& s : sign)
    if (s == 0) s = 1;  // isolated edges cannot occur in a connected quad complex
  return EdgeSigns(std::move(sign));
}

}  // namespace dmin
