#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "dmin/quadgraph.hpp"

namespace dmin {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Edge path between two vertices along the 1-skeleton (breadth-first).
std::vector<int> shortest_edge_path(const SQuadGraph& g, int from, int to) {
  std::vector<int> via(g.vertex_count(), -2);
  via[from] = -1;
  std::deque<int> q{from};
  while (!q.empty() && via[to] == -2) {
    const int v = q.front();
    q.pop_front();
    for (int e : g.incident_edges(v)) {
      const int w = g.other_end(e, v);
      if (via[w] != -2) continue;
      via[w] = e;
      q.push_back(w);
    }
  }
  if (via[to] == -2)
    throw GraphError("branch points " + std::to_string(from) + " and " + std::to_string(to) +
                     " lie in different components");
  std::vector<int> path;
  for (int v = to; v != from;) {
    path.push_back(via[v]);
    v = g.other_end(via[v], v);
  }
  return path;
}

}  // namespace

DoubleCover make_branched_double_cover(const SQuadGraph& base, const std::vector<int>& branch_vertices) {
  for (int e = 0; e < base.edge_count(); ++e)
    if (base.is_boundary_edge(e)) throw GraphError("double cover requires a closed base surface");
  if (!base.is_consistently_oriented()) throw GraphError("double cover requires an oriented base surface");
  std::set<int> branch(branch_vertices.begin(), branch_vertices.end());
  if (branch.size() % 2 != 0)
    throw GraphError("monodromy obstruction: a loop enclosing all " + std::to_string(branch.size()) +
                     " branch points has odd monodromy");

  // Z/2 cut chain whose boundary is the branch set.
  std::vector<int> bv(branch.begin(), branch.end());
  std::vector<std::uint8_t> cut(base.edge_count(), 0);
  for (size_t i = 0; i + 1 < bv.size(); i += 2)
    for (int e : shortest_edge_path(base, bv[i], bv[i + 1])) cut[e] ^= 1;

  const int nf = base.face_count();
  // Corner slot of (face, sheet, position).
  auto slot = [](int f, int sheet, int i) { return (2 * f + sheet) * 4 + i; };
  UnionFind uf(8 * nf);
  for (int e = 0; e < base.edge_count(); ++e) {
    const auto [f0, f1] = base.edge_faces(e);
    for (int sheet = 0; sheet < 2; ++sheet)
      for (int v : base.edge(e))
        uf.unite(slot(f0, sheet, base.corner_index(f0, v)), slot(f1, sheet ^ cut[e], base.corner_index(f1, v)));
  }

  DoubleCover dc;
  std::vector<int> class_id(8 * nf, -1);
  std::vector<Label> labels;
  std::vector<std::uint8_t> flags;
  std::vector<Face> faces;
  for (int f = 0; f < nf; ++f)
    for (int sheet = 0; sheet < 2; ++sheet) {
      Face fc{};
      for (int i = 0; i < 4; ++i) {
        const int root = uf.find(slot(f, sheet, i));
        if (class_id[root] < 0) {
          const int v = base.face(f)[i];
          class_id[root] = static_cast<int>(labels.size());
          labels.push_back(base.label(v));
          std::uint8_t fl = base.flags(v) & static_cast<std::uint8_t>(~kFlagBranch);
          if (branch.count(v)) fl |= kFlagBranch;
          flags.push_back(fl);
          dc.projection.push_back(v);
        }
        fc[i] = class_id[root];
      }
      faces.push_back(fc);
      dc.face_projection.push_back(f);
    }

  // Each vertex must have two preimages unless it is a branch point.
  std::vector<int> preimages(base.vertex_count(), 0);
  for (int v : dc.projection) ++preimages[v];
  for (int v = 0; v < base.vertex_count(); ++v) {
    const int expected = branch.count(v) ? 1 : 2;
    if (preimages[v] != expected)
      throw GraphError("monodromy obstruction around vertex " + std::to_string(v));
  }

  for (int e = 0; e < base.edge_count(); ++e)
    if (cut[e]) dc.cut_edges.push_back(e);
  dc.graph = SQuadGraph(std::move(labels), std::move(faces), std::move(flags));
  return dc;
}

}  // namespace dmin
