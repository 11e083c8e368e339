#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace webtrace {

enum class VertexColor { Black, White };
enum class SurfaceKind { Disk, Annulus, Pants };

struct Vertex {
  int id;
  VertexColor color;
};

// Edges are stored black -> white; parallel edges are allowed.
struct Edge {
  int id;
  int black;
  int white;
};

struct Surface {
  SurfaceKind kind = SurfaceKind::Disk;
  std::vector<int> punctured_faces;        // face ids in canonical face order
  std::vector<std::vector<int>> seams;     // dual paths as edge-id lists
};

// One side of an edge: bw = traversed black -> white.
struct FaceSide {
  int edge;
  bool bw;
  friend bool operator==(const FaceSide&, const FaceSide&) = default;
};

struct Face {
  int id;
  std::vector<FaceSide> sides;  // cyclic, with the face on the left
  std::size_t length() const { return sides.size(); }
};

struct FaceData {
  std::vector<Face> faces;
  // face id containing the given directed side (the face on its left)
  int face_of(int edge_index, bool bw) const { return side_face[2 * edge_index + (bw ? 0 : 1)]; }
  std::vector<int> side_face;  // indexed by 2*edge_index + dir
};

// Cilia: per vertex, index into the rotation list of the starting half-edge.
using Cilia = std::map<int, int>;

using KasteleynSigns = std::map<int, int>;  // edge id -> +1/-1

// A seam resolved against the embedding: per crossed edge, the sign of the
// dual path's crossing relative to the edge's black->white direction.
struct ResolvedSeam {
  int from_face, to_face;
  std::map<int, int> crossing_sign;  // edge id -> +1/-1
};

class EmbeddedBipartiteGraph {
 public:
  EmbeddedBipartiteGraph() = default;
  EmbeddedBipartiteGraph(EmbeddedBipartiteGraph&&) = default;
  EmbeddedBipartiteGraph& operator=(EmbeddedBipartiteGraph&&) = default;
  // copies start with cold caches
  EmbeddedBipartiteGraph(const EmbeddedBipartiteGraph& o)
      : vertices(o.vertices), edges(o.edges), rotation(o.rotation), surface(o.surface) {}
  EmbeddedBipartiteGraph& operator=(const EmbeddedBipartiteGraph& o) {
    vertices = o.vertices;
    edges = o.edges;
    rotation = o.rotation;
    surface = o.surface;
    invalidate_caches();
    vindex_.clear();
    eindex_.clear();
    return *this;
  }

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::map<int, std::vector<int>> rotation;  // vertex id -> CCW incident edge ids
  Surface surface;

  // index lookups
  int vertex_index(int id) const;
  int edge_index(int id) const;
  const Vertex& vertex(int id) const { return vertices[vertex_index(id)]; }
  const Edge& edge(int id) const { return edges[edge_index(id)]; }
  bool is_black(int vertex_id) const { return vertex(vertex_id).color == VertexColor::Black; }
  int endpoint(int edge_id, bool black_side) const {
    const Edge& e = edge(edge_id);
    return black_side ? e.black : e.white;
  }
  std::size_t num_black() const;

  // Throws std::invalid_argument on any structural inconsistency.
  void validate() const;

  const FaceData& faces() const;
  void invalidate_caches() { faces_.reset(); seams_.reset(); }

  // Linear order of the incident edges starting at the cilium: CCW at black
  // vertices, CW at white vertices (stored rotation is CCW everywhere).
  std::vector<int> half_edge_order(int vertex_id, int cilium_index) const;

  const std::vector<ResolvedSeam>& resolved_seams() const;

 private:
  mutable std::unique_ptr<FaceData> faces_;
  mutable std::unique_ptr<std::vector<ResolvedSeam>> seams_;
  mutable std::map<int, int> vindex_, eindex_;
};

FaceData compute_faces(const EmbeddedBipartiteGraph& g);

// Kasteleyn rule: each face of length l carries (l/2+1) mod 2 minus signs.
// GF(2) solve with a spanning tree pinned to +1; throws if infeasible.
KasteleynSigns kasteleyn_signs(const EmbeddedBipartiteGraph& g);

// Check the face rule for a given sign assignment.
bool signs_satisfy_face_rule(const EmbeddedBipartiteGraph& g, const KasteleynSigns& s);

// Deterministic perfect matching (augmenting paths); nullopt if none exists.
std::optional<std::vector<int>> perfect_matching(const EmbeddedBipartiteGraph& g);

// Cilia construction from a perfect matching: the cilia of each matched
// edge's endpoints point into a common face, so every face holds an even
// number of cilia and identity-connection traces come out positive.
Cilia positive_cilia(const EmbeddedBipartiteGraph& g, const std::vector<int>& matching);

// Number of cilia whose corner lies in each face.
std::map<int, int> cilia_per_face(const EmbeddedBipartiteGraph& g, const Cilia& cilia);

// Closed walk as a sequence of directed edge sides.
using Walk = std::vector<FaceSide>;

// Net signed seam crossings of the walk, one entry per seam.
std::vector<int> seam_windings(const EmbeddedBipartiteGraph& g, const Walk& walk);

// True iff the walk has zero net crossing with every seam.
bool is_contractible(const EmbeddedBipartiteGraph& g, const Walk& walk);

}  // namespace webtrace
