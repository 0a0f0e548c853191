#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dmin {

enum class Label : std::uint8_t { CircleWhite, SphereWhite, Black };

const char* label_name(Label l);
Label label_from_name(const std::string& s);

enum VertexFlag : std::uint8_t {
  kFlagNone = 0,
  kFlagBoundary = 1,
  kFlagBranch = 2,
  kFlagDegenerateEnd = 4,
};

using Face = std::array<int, 4>;
using Edge = std::array<int, 2>;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Combinatorial S-quad-graph: labeled vertices and oriented quadrilateral faces.
///
/// Edges are derived from the faces. The boundary flag is recomputed from the
/// topology on construction; branch and degenerate-end flags are caller-supplied.
/// Immutable after construction.
class SQuadGraph {
 public:
  SQuadGraph() = default;
  SQuadGraph(std::vector<Label> labels, std::vector<Face> faces,
             std::vector<std::uint8_t> flags = {}, std::vector<Edge> degenerate_edges = {});

  int vertex_count() const { return static_cast<int>(labels_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  Label label(int v) const { return labels_[v]; }
  bool is_black(int v) const { return labels_[v] == Label::Black; }
  bool is_white(int v) const { return labels_[v] != Label::Black; }
  std::uint8_t flags(int v) const { return flags_[v]; }
  bool has_flag(int v, VertexFlag f) const { return (flags_[v] & f) != 0; }

  const std::vector<Label>& labels() const { return labels_; }
  const std::vector<std::uint8_t>& all_flags() const { return flags_; }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int f) const { return faces_[f]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }

  std::optional<int> edge_id(int a, int b) const;
  /// Faces incident to edge `e` (second entry -1 on boundary edges).
  const std::array<int, 2>& edge_faces(int e) const { return edge_faces_[e]; }
  int edge_face_count(int e) const { return edge_face_count_[e]; }
  bool is_boundary_edge(int e) const { return edge_face_count_[e] == 1; }
  bool is_degenerate_edge(int e) const { return degenerate_[e]; }
  std::vector<int> degenerate_edges() const;

  int degree(int v) const { return static_cast<int>(incident_edges_[v].size()); }
  const std::vector<int>& incident_edges(int v) const { return incident_edges_[v]; }
  bool is_boundary_vertex(int v) const { return has_flag(v, kFlagBoundary); }
  int other_end(int e, int v) const { return edges_[e][0] == v ? edges_[e][1] : edges_[e][0]; }

  /// Face containing the directed edge a -> b in its cyclic order.
  std::optional<int> face_with_directed_edge(int a, int b) const;
  /// Position of `v` within face `f`, or -1.
  int corner_index(int f, int v) const;

  /// Incident faces in rotation order. For boundary vertices the sequence
  /// starts at a boundary edge.
  std::vector<int> faces_around(int v) const;
  /// Neighbors in rotation order; for boundary vertices the list is open.
  std::vector<int> cyclic_neighbors(int v) const;

  int euler_characteristic() const { return vertex_count() - edge_count() + face_count(); }
  int component_count() const;
  /// Connected, orientable, and a disk or a sphere.
  bool is_simply_connected() const;
  bool is_consistently_oriented() const;

 private:
  std::vector<Label> labels_;
  std::vector<Face> faces_;
  std::vector<std::uint8_t> flags_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 2>> edge_faces_;
  std::vector<int> edge_face_count_;
  std::vector<bool> degenerate_;
  std::vector<std::vector<int>> incident_edges_;
  std::unordered_map<std::uint64_t, int> edge_lookup_;
  std::unordered_map<std::uint64_t, int> directed_lookup_;  // (a,b) -> face; first wins
  bool orientation_clash_ = false;
  bool overused_edge_ = false;
};

using SQuadGraphPtr = std::shared_ptr<const SQuadGraph>;

// ---------------------------------------------------------------------------
// Validation

enum class IssueKind {
  RepeatedVertexInFace,
  VertexOutOfRange,
  NotBipartite,
  FaceWhiteLabels,
  InteriorBlackDegree,
  InteriorOddDegree,
  EdgeOverused,
  OrientationMismatch,
};

struct ValidationIssue {
  IssueKind kind;
  std::vector<int> vertices;
  std::vector<int> faces;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  bool has(IssueKind k) const;
};

/// Lists every violated S-quad-graph invariant. Interior vertices flagged as
/// branch points are exempt from the even-degree rule.
ValidationReport validate(const SQuadGraph& g);

// ---------------------------------------------------------------------------
// Edge signs

class EdgeSigns {
 public:
  EdgeSigns() = default;
  explicit EdgeSigns(std::vector<std::int8_t> s) : signs_(std::move(s)) {}
  int operator[](int e) const { return signs_[e]; }
  int size() const { return static_cast<int>(signs_.size()); }
  EdgeSigns flipped() const;
  const std::vector<std::int8_t>& values() const { return signs_; }

 private:
  std::vector<std::int8_t> signs_;
};

/// Checkerboard +/- labeling of the edges (opposite edges of a face agree,
/// adjacent edges differ), normalized so edge 0 is +.
/// Throws GraphError on odd interior degree, non-orientable, or
/// non-simply-connected input.
EdgeSigns assign_edge_signs(const SQuadGraph& g);

// ---------------------------------------------------------------------------
// Generators

struct GridPatch {
  SQuadGraph graph;
  std::vector<std::array<int, 2>> index;  // (i, j) per vertex
  int i0 = 0, i1 = 0, j0 = 0, j1 = 0;
  int id(int i, int j) const { return (i - i0) * (j1 - j0 + 1) + (j - j0); }
};

/// Rectangular piece of Z^2 with i in [i0, i1], j in [j0, j1]. Vertex (i, j) is
/// black iff i + j has parity `black_parity`; a white vertex is a sphere vertex
/// iff i is even. Faces are counterclockwise in the (i, j) plane.
GridPatch make_zsquare_grid(int i0, int i1, int j0, int j1, int black_parity = 1);

/// (2m+1) x (2n+1) vertex patch centered at the origin.
GridPatch make_zsquare_patch(int m, int n, int black_parity = 1);

struct RefinedCube {
  SQuadGraph graph;
  std::vector<std::array<int, 3>> coords;
  int m = 0, n = 0, k = 0;
  std::vector<int> corners;  // the 8 branch-flagged vertices
  int id(int x, int y, int z) const;
  std::unordered_map<std::uint64_t, int> lookup;
};

/// Surface grid of the box [0,m] x [0,n] x [0,k]; faces outward-oriented.
/// Black iff the coordinate sum is odd; circle vertices have all coordinates
/// even (this includes the corners), sphere vertices the rest.
RefinedCube make_refined_cube(int m, int n, int k);

struct DoubleCover {
  SQuadGraph graph;
  std::vector<int> projection;       // cover vertex -> base vertex
  std::vector<int> face_projection;  // cover face -> base face
  std::vector<int> cut_edges;        // base edges where the sheets swap
};

/// Two-sheeted cover of a closed graph branched over `branch_vertices`.
/// Throws GraphError with the failing monodromy if no such cover exists.
DoubleCover make_branched_double_cover(const SQuadGraph& base, const std::vector<int>& branch_vertices);

struct ScherkGraph {
  SQuadGraph graph;
  RefinedCube base;
  std::vector<int> projection;     // vertex -> base vertex (end vertices map to the split vertex)
  std::vector<int> end_vertices;   // the 2-valent vertices
};

/// Refined cube (m, n, 2) with each short vertical cube edge split through a
/// new 2-valent sphere vertex. The inserted edges are degenerate.
ScherkGraph make_scherk_graph(int m, int n);

struct DiskCut {
  SQuadGraph graph;
  std::vector<int> projection;       // disk vertex -> source vertex
  std::vector<int> face_projection;  // disk face -> source face
};

/// Cuts the sub-complex formed by `faces` (all faces if empty) into a
/// topological disk along a minimal cut graph.
DiskCut cut_to_disk(const SQuadGraph& g, const std::vector<int>& faces = {});

}  // namespace dmin
