#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "dmin/quadgraph.hpp"

namespace dmin {

namespace {

int mod2(int x) { return ((x % 2) + 2) % 2; }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

GridPatch make_zsquare_grid(int i0, int i1, int j0, int j1, int black_parity) {
  if (i1 <= i0 || j1 <= j0) throw GraphError("grid patch needs at least one face in each direction");
  GridPatch p;
  p.i0 = i0;
  p.i1 = i1;
  p.j0 = j0;
  p.j1 = j1;
  std::vector<Label> labels;
  for (int i = i0; i <= i1; ++i)
    for (int j = j0; j <= j1; ++j) {
      p.index.push_back({i, j});
      if (mod2(i + j) == mod2(black_parity))
        labels.push_back(Label::Black);
      else
        labels.push_back(mod2(i) == 0 ? Label::SphereWhite : Label::CircleWhite);
    }
  std::vector<Face> faces;
  for (int i = i0; i < i1; ++i)
    for (int j = j0; j < j1; ++j)
      faces.push_back({p.id(i, j), p.id(i + 1, j), p.id(i + 1, j + 1), p.id(i, j + 1)});
  p.graph = SQuadGraph(std::move(labels), std::move(faces));
  return p;
}

GridPatch make_zsquare_patch(int m, int n, int black_parity) {
  if (m < 1 || n < 1) throw GraphError("patch size must be at least 1");
  return make_zsquare_grid(-m, m, -n, n, black_parity);
}

int RefinedCube::id(int x, int y, int z) const {
  const std::uint64_t key = (static_cast<std::uint64_t>(x) * (n + 1) + y) * (k + 1) + z;
  auto it = lookup.find(key);
  if (it == lookup.end()) throw GraphError("point is not on the refined cube surface");
  return it->second;
}

RefinedCube make_refined_cube(int m, int n, int k) {
  if (m < 2 || n < 2 || k < 2 || m % 2 || n % 2 || k % 2)
    throw GraphError("refined cube parameters must be even and positive");
  RefinedCube c;
  c.m = m;
  c.n = n;
  c.k = k;
  const int dims[3] = {m, n, k};
  std::vector<Label> labels;
  std::vector<std::uint8_t> flags;
  for (int x = 0; x <= m; ++x)
    for (int y = 0; y <= n; ++y)
      for (int z = 0; z <= k; ++z) {
        const bool on_surface = x == 0 || x == m || y == 0 || y == n || z == 0 || z == k;
        if (!on_surface) continue;
        const int id = static_cast<int>(c.coords.size());
        c.coords.push_back({x, y, z});
        c.lookup[(static_cast<std::uint64_t>(x) * (n + 1) + y) * (k + 1) + z] = id;
        const bool corner = (x == 0 || x == m) && (y == 0 || y == n) && (z == 0 || z == k);
        if ((x + y + z) % 2)
          labels.push_back(Label::Black);
        else if (x % 2 == 0 && y % 2 == 0 && z % 2 == 0)
          labels.push_back(Label::CircleWhite);
        else
          labels.push_back(Label::SphereWhite);
        flags.push_back(corner ? kFlagBranch : kFlagNone);
        if (corner) c.corners.push_back(id);
      }

  std::vector<Face> faces;
  for (int a = 0; a < 3; ++a)
    for (int side = 0; side < 2; ++side) {
      const int e1 = side ? (a + 1) % 3 : (a + 2) % 3;
      const int e2 = side ? (a + 2) % 3 : (a + 1) % 3;
      for (int u = 0; u < dims[e1]; ++u)
        for (int v = 0; v < dims[e2]; ++v) {
          std::array<int, 3> p{};
          p[a] = side ? dims[a] : 0;
          p[e1] = u;
          p[e2] = v;
          auto at = [&](int du, int dv) {
            std::array<int, 3> q = p;
            q[e1] += du;
            q[e2] += dv;
            return c.id(q[0], q[1], q[2]);
          };
          faces.push_back({at(0, 0), at(1, 0), at(1, 1), at(0, 1)});
        }
    }
  c.graph = SQuadGraph(std::move(labels), std::move(faces), std::move(flags));
  return c;
}

ScherkGraph make_scherk_graph(int m, int n) {
  ScherkGraph s;
  s.base = make_refined_cube(m, n, 2);
  const RefinedCube& cube = s.base;
  const SQuadGraph& g = cube.graph;

  std::vector<Label> labels = g.labels();
  std::vector<std::uint8_t> flags = g.all_flags();
  for (auto& f : flags) f = kFlagNone;  // corners become 4-valent: no branching
  std::vector<Face> faces = g.faces();
  s.projection.resize(g.vertex_count());
  std::iota(s.projection.begin(), s.projection.end(), 0);
  std::vector<Edge> degenerate;

  for (int x : {0, m})
    for (int y : {0, n}) {
      const int a = cube.id(x, y, 0), b = cube.id(x, y, 2), mid = cube.id(x, y, 1);
      // Faces on the plane x = const keep `mid`; the others move to a new vertex.
      const int m2 = static_cast<int>(labels.size());
      labels.push_back(Label::Black);
      flags.push_back(kFlagNone);
      s.projection.push_back(mid);
      const int w = static_cast<int>(labels.size());
      labels.push_back(Label::SphereWhite);
      flags.push_back(kFlagDegenerateEnd);
      s.projection.push_back(mid);
      s.end_vertices.push_back(w);

      for (int f : g.faces_around(mid)) {
        bool on_x_plane = true;
        for (int v : g.face(f))
          if (cube.coords[v][0] != x) on_x_plane = false;
        if (!on_x_plane)
          for (int& v : faces[f])
            if (v == mid) v = m2;
      }
      faces.push_back({a, mid, w, m2});
      faces.push_back({b, m2, w, mid});
      degenerate.push_back({mid, w});
      degenerate.push_back({m2, w});
    }

  // Orient the inserted faces against their neighbors.
  std::set<std::pair<int, int>> directed;
  const int old_faces = g.face_count();
  for (int f = 0; f < old_faces; ++f)
    for (int i = 0; i < 4; ++i) directed.insert({faces[f][i], faces[f][(i + 1) % 4]});
  for (int f = old_faces; f < static_cast<int>(faces.size()); ++f) {
    Face& fc = faces[f];
    if (directed.count({fc[0], fc[1]}) || directed.count({fc[3], fc[0]})) std::reverse(fc.begin(), fc.end());
  }

  s.graph = SQuadGraph(std::move(labels), std::move(faces), std::move(flags), std::move(degenerate));
  return s;
}

DiskCut cut_to_disk(const SQuadGraph& g, const std::vector<int>& face_subset) {
  std::vector<int> faces = face_subset;
  if (faces.empty()) {
    faces.resize(g.face_count());
    std::iota(faces.begin(), faces.end(), 0);
  }
  std::vector<int> local(g.face_count(), -1);
  for (int i = 0; i < static_cast<int>(faces.size()); ++i) local[faces[i]] = i;
  const int nf = static_cast<int>(faces.size());

  // Interior edges of the sub-complex.
  std::vector<std::array<int, 2>> inner(g.edge_count(), {-1, -1});
  std::vector<bool> is_inner(g.edge_count(), false), on_boundary(g.edge_count(), false);
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto [f0, f1] = g.edge_faces(e);
    const bool in0 = f0 >= 0 && local[f0] >= 0, in1 = f1 >= 0 && local[f1] >= 0;
    if (in0 && in1) {
      is_inner[e] = true;
      inner[e] = {local[f0], local[f1]};
    } else if (in0 || in1) {
      on_boundary[e] = true;
    }
  }

  // Dual spanning forest by breadth-first search.
  std::vector<bool> glued(g.edge_count(), false), seen(nf, false);
  for (int root = 0; root < nf; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::deque<int> q{root};
    while (!q.empty()) {
      const int lf = q.front();
      q.pop_front();
      const Face& fc = g.face(faces[lf]);
      for (int i = 0; i < 4; ++i) {
        const int e = *g.edge_id(fc[i], fc[(i + 1) % 4]);
        if (!is_inner[e]) continue;
        const int other = inner[e][0] == lf ? inner[e][1] : inner[e][0];
        if (seen[other]) continue;
        seen[other] = true;
        glued[e] = true;
        q.push_back(other);
      }
    }
  }

  // Zip the cut graph from its leaves.
  std::vector<int> cut_degree(g.vertex_count(), 0);
  for (int e = 0; e < g.edge_count(); ++e)
    if ((is_inner[e] && !glued[e]) || on_boundary[e]) {
      ++cut_degree[g.edge(e)[0]];
      ++cut_degree[g.edge(e)[1]];
    }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e = 0; e < g.edge_count(); ++e) {
      if (!is_inner[e] || glued[e]) continue;
      const int a = g.edge(e)[0], b = g.edge(e)[1];
      if (cut_degree[a] == 1 || cut_degree[b] == 1) {
        glued[e] = true;
        --cut_degree[a];
        --cut_degree[b];
        changed = true;
      }
    }
  }

  // Corners (local face, position) identified across glued edges.
  UnionFind uf(4 * nf);
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!glued[e]) continue;
    const int f0 = inner[e][0], f1 = inner[e][1];
    for (int v : g.edge(e))
      uf.unite(4 * f0 + g.corner_index(faces[f0], v), 4 * f1 + g.corner_index(faces[f1], v));
  }

  DiskCut out;
  std::vector<int> class_id(4 * nf, -1);
  std::vector<Label> labels;
  std::vector<std::uint8_t> flags;
  std::vector<Face> new_faces(nf);
  for (int lf = 0; lf < nf; ++lf)
    for (int i = 0; i < 4; ++i) {
      const int root = uf.find(4 * lf + i);
      if (class_id[root] < 0) {
        const int v = g.face(faces[lf])[i];
        class_id[root] = static_cast<int>(labels.size());
        labels.push_back(g.label(v));
        flags.push_back(g.flags(v) & static_cast<std::uint8_t>(~kFlagBoundary));
        out.projection.push_back(v);
      }
      new_faces[lf][i] = class_id[root];
    }
  std::vector<Edge> degenerate;
  for (int lf = 0; lf < nf; ++lf)
    for (int i = 0; i < 4; ++i) {
      const int a = new_faces[lf][i], b = new_faces[lf][(i + 1) % 4];
      auto e = g.edge_id(out.projection[a], out.projection[b]);
      if (e && g.is_degenerate_edge(*e)) degenerate.push_back({std::min(a, b), std::max(a, b)});
    }
  std::sort(degenerate.begin(), degenerate.end());
  degenerate.erase(std::unique(degenerate.begin(), degenerate.end()), degenerate.end());
  out.face_projection = faces;
  out.graph = SQuadGraph(std::move(labels), std::move(new_faces), std::move(flags), std::move(degenerate));
  return out;
}

}  // namespace dmin
