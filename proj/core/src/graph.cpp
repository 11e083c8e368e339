#include "webtrace/graph.hpp"

#include <algorithm>
#include <cstddef>
#include <queue>
#include <set>
#include <stdexcept>

namespace webtrace {

namespace {

std::size_t position_of(const std::vector<int>& rot, int edge_id) {
  for (std::size_t i = 0; i < rot.size(); ++i)
    if (rot[i] == edge_id) return i;
  throw std::invalid_argument("edge not in rotation");
}

}  // namespace

int EmbeddedBipartiteGraph::vertex_index(int id) const {
  if (vindex_.empty())
    for (std::size_t i = 0; i < vertices.size(); ++i)
      vindex_[vertices[i].id] = static_cast<int>(i);
  auto it = vindex_.find(id);
  if (it == vindex_.end()) throw std::invalid_argument("unknown vertex id");
  return it->second;
}

int EmbeddedBipartiteGraph::edge_index(int id) const {
  if (eindex_.empty())
    for (std::size_t i = 0; i < edges.size(); ++i)
      eindex_[edges[i].id] = static_cast<int>(i);
  auto it = eindex_.find(id);
  if (it == eindex_.end()) throw std::invalid_argument("unknown edge id");
  return it->second;
}

std::size_t EmbeddedBipartiteGraph::num_black() const {
  std::size_t n = 0;
  for (const auto& v : vertices)
    if (v.color == VertexColor::Black) ++n;
  return n;
}

void EmbeddedBipartiteGraph::validate() const {
  std::set<int> vids, eids;
  for (const auto& v : vertices)
    if (!vids.insert(v.id).second)
      throw std::invalid_argument("duplicate vertex id");
  for (const auto& e : edges) {
    if (!eids.insert(e.id).second)
      throw std::invalid_argument("duplicate edge id");
    if (!vids.count(e.black) || !vids.count(e.white))
      throw std::invalid_argument("edge references unknown vertex");
    if (vertex(e.black).color != VertexColor::Black ||
        vertex(e.white).color != VertexColor::White)
      throw std::invalid_argument("edge endpoint colors are wrong");
  }
  if (2 * num_black() != vertices.size())
    throw std::invalid_argument("graph is not balanced");
  // Each vertex's rotation must list exactly its incident edges.
  std::map<int, std::multiset<int>> incident;
  for (const auto& e : edges) {
    incident[e.black].insert(e.id);
    incident[e.white].insert(e.id);
  }
  for (const auto& v : vertices) {
    auto it = rotation.find(v.id);
    if (it == rotation.end())
      throw std::invalid_argument("missing rotation for a vertex");
    std::multiset<int> listed(it->second.begin(), it->second.end());
    if (listed != incident[v.id])
      throw std::invalid_argument("rotation does not match incident edges");
    if (listed.empty()) throw std::invalid_argument("isolated vertex");
  }
  // Connectivity.
  if (!vertices.empty()) {
    std::set<int> seen{vertices[0].id};
    std::queue<int> q;
    q.push(vertices[0].id);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int eid : rotation.at(v)) {
        const Edge& e = edge(eid);
        int other = (e.black == v) ? e.white : e.black;
        if (seen.insert(other).second) q.push(other);
      }
    }
    if (seen.size() != vertices.size())
      throw std::invalid_argument("graph is not connected");
  }
  // Surface data.
  const FaceData& fd = compute_faces(*this);
  for (int f : surface.punctured_faces)
    if (f < 0 || static_cast<std::size_t>(f) >= fd.faces.size())
      throw std::invalid_argument("punctured face id out of range");
  std::size_t want_punctures = 0, want_seams = 0;
  switch (surface.kind) {
    case SurfaceKind::Disk: want_punctures = 0; want_seams = 0; break;
    case SurfaceKind::Annulus: want_punctures = 2; want_seams = 1; break;
    case SurfaceKind::Pants: want_punctures = 3; want_seams = 2; break;
  }
  if (surface.punctured_faces.size() != want_punctures ||
      surface.seams.size() != want_seams)
    throw std::invalid_argument("surface data does not match surface kind");
  for (const auto& s : surface.seams) {
    if (s.empty()) throw std::invalid_argument("empty seam");
    for (int eid : s) edge(eid);
  }
  resolved_seams();  // throws if a seam is not a valid dual path
}

FaceData compute_faces(const EmbeddedBipartiteGraph& g) {
  FaceData fd;
  fd.side_face.assign(2 * g.edges.size(), -1);
  auto side_slot = [&](const FaceSide& s) {
    return 2 * static_cast<std::size_t>(g.edge_index(s.edge)) + (s.bw ? 0 : 1);
  };
  // Successor of a directed side in its (left) face: take the next edge
  // clockwise at the head vertex. Rotations are CCW, so this walks the face
  // boundary with the face kept on the left.
  auto next_side = [&](const FaceSide& s) {
    int head = g.endpoint(s.edge, !s.bw);
    const auto& rot = g.rotation.at(head);
    std::size_t pos = position_of(rot, s.edge);
    int f = rot[(pos + rot.size() - 1) % rot.size()];
    return FaceSide{f, g.edge(f).black == head};
  };
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    for (bool bw : {true, false}) {
      FaceSide start{g.edges[ei].id, bw};
      if (fd.side_face[side_slot(start)] >= 0) continue;
      Face face;
      face.id = static_cast<int>(fd.faces.size());
      FaceSide s = start;
      do {
        face.sides.push_back(s);
        fd.side_face[side_slot(s)] = face.id;
        s = next_side(s);
      } while (!(s == start));
      fd.faces.push_back(std::move(face));
    }
  }
  return fd;
}

const FaceData& EmbeddedBipartiteGraph::faces() const {
  if (!faces_) faces_ = std::make_unique<FaceData>(compute_faces(*this));
  return *faces_;
}

std::vector<int> EmbeddedBipartiteGraph::half_edge_order(int vertex_id,
                                                         int cilium_index) const {
  const auto& rot = rotation.at(vertex_id);
  const std::size_t d = rot.size();
  if (cilium_index < 0 || static_cast<std::size_t>(cilium_index) >= d)
    throw std::invalid_argument("cilium index out of range");
  std::vector<int> order(d);
  const bool ccw = is_black(vertex_id);
  const std::size_t c = static_cast<std::size_t>(cilium_index);
  for (std::size_t k = 0; k < d; ++k)
    order[k] = rot[ccw ? (c + k) % d : (c + d - k) % d];
  return order;
}

KasteleynSigns kasteleyn_signs(const EmbeddedBipartiteGraph& g) {
  const FaceData& fd = g.faces();
  // Spanning tree (BFS over ascending edge ids) pinned to +1.
  std::set<int> tree;
  {
    std::set<int> seen{g.vertices[0].id};
    std::queue<int> q;
    q.push(g.vertices[0].id);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      std::vector<int> inc = g.rotation.at(v);
      std::sort(inc.begin(), inc.end());
      for (int eid : inc) {
        const Edge& e = g.edge(eid);
        int other = (e.black == v) ? e.white : e.black;
        if (seen.insert(other).second) {
          tree.insert(eid);
          q.push(other);
        }
      }
    }
  }
  std::vector<int> unknowns;  // edge ids off the tree
  std::map<int, std::size_t> col;
  for (const auto& e : g.edges)
    if (!tree.count(e.id)) {
      col[e.id] = unknowns.size();
      unknowns.push_back(e.id);
    }
  const std::size_t m = unknowns.size();
  // One GF(2) equation per face; edges appearing twice in a face cancel.
  std::vector<std::vector<char>> rows;
  for (const auto& f : fd.faces) {
    if (f.length() % 2 != 0)
      throw std::invalid_argument("odd face length");
    std::vector<char> row(m + 1, 0);
    for (const auto& s : f.sides)
      if (!tree.count(s.edge)) row[col[s.edge]] ^= 1;
    row[m] = static_cast<char>((f.length() / 2 + 1) % 2);
    rows.push_back(std::move(row));
  }
  // Gaussian elimination over GF(2).
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && !rows[p][c]) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r][c])
        for (std::size_t j = c; j <= m; ++j) rows[r][j] ^= rows[rank][j];
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (rows[r][m]) throw std::runtime_error("no Kasteleyn sign assignment exists");
  std::vector<char> x(m, 0);
  for (std::size_t r = 0; r < rank; ++r) {
    std::size_t lead = 0;
    while (lead < m && !rows[r][lead]) ++lead;
    if (lead < m) x[lead] = rows[r][m];  // free variables stay 0 (sign +1)
  }
  KasteleynSigns signs;
  for (const auto& e : g.edges)
    signs[e.id] = tree.count(e.id) ? 1 : (x[col[e.id]] ? -1 : 1);
  return signs;
}

bool signs_satisfy_face_rule(const EmbeddedBipartiteGraph& g,
                             const KasteleynSigns& s) {
  for (const auto& f : g.faces().faces) {
    int prod = 1;
    for (const auto& side : f.sides) prod *= s.at(side.edge);
    int want = (f.length() / 2 + 1) % 2 == 0 ? 1 : -1;
    if (prod != want) return false;
  }
  return true;
}

std::optional<std::vector<int>> perfect_matching(const EmbeddedBipartiteGraph& g) {
  std::vector<int> blacks;
  for (const auto& v : g.vertices)
    if (v.color == VertexColor::Black) blacks.push_back(v.id);
  std::map<int, int> match_white;  // white id -> matched edge id
  std::map<int, int> match_black;  // black id -> matched edge id
  for (int b : blacks) {
    std::set<int> visited;
    // Augmenting path search from b.
    auto try_augment = [&](auto&& self, int black_id) -> bool {
      std::vector<int> inc = g.rotation.at(black_id);
      std::sort(inc.begin(), inc.end());
      for (int eid : inc) {
        int w = g.edge(eid).white;
        if (!visited.insert(w).second) continue;
        auto it = match_white.find(w);
        if (it == match_white.end() ||
            self(self, g.edge(it->second).black)) {
          match_white[w] = eid;
          match_black[black_id] = eid;
          return true;
        }
      }
      return false;
    };
    if (!try_augment(try_augment, b)) return std::nullopt;
  }
  std::vector<int> matching;
  for (int b : blacks) matching.push_back(match_black.at(b));
  return matching;
}

Cilia positive_cilia(const EmbeddedBipartiteGraph& g,
                     const std::vector<int>& matching) {
  // For a matched edge b--w, point both cilia into the face on the left of
  // the black-to-white direction, in the corners flanking the edge. Cilia
  // then land in faces in pairs, so every face holds an even number.
  Cilia cilia;
  std::set<int> covered;
  const FaceData& fd = g.faces();
  std::map<int, int> face_count;
  std::vector<int> sorted = matching;
  std::sort(sorted.begin(), sorted.end());
  for (int eid : sorted) {
    const Edge& e = g.edge(eid);
    if (!covered.insert(e.black).second || !covered.insert(e.white).second)
      throw std::invalid_argument("matching is not a matching");
    const auto& rb = g.rotation.at(e.black);
    const auto& rw = g.rotation.at(e.white);
    std::size_t pb = position_of(rb, eid);
    std::size_t pw = position_of(rw, eid);
    // Either face flanking the edge works; keep the per-face load balanced.
    int left = fd.face_of(g.edge_index(eid), true);
    int right = fd.face_of(g.edge_index(eid), false);
    if (face_count[right] < face_count[left]) {
      cilia[e.black] = static_cast<int>(pb);
      cilia[e.white] = static_cast<int>(pw);
      face_count[right] += 2;
    } else {
      cilia[e.black] = static_cast<int>((pb + 1) % rb.size());
      cilia[e.white] = static_cast<int>((pw + rw.size() - 1) % rw.size());
      face_count[left] += 2;
    }
  }
  if (covered.size() != g.vertices.size())
    throw std::invalid_argument("matching is not perfect");
  return cilia;
}

std::map<int, int> cilia_per_face(const EmbeddedBipartiteGraph& g,
                                  const Cilia& cilia) {
  const FaceData& fd = g.faces();
  std::map<int, int> count;
  for (const auto& f : fd.faces) count[f.id] = 0;
  for (const auto& [vid, ci] : cilia) {
    const auto& rot = g.rotation.at(vid);
    const std::size_t d = rot.size();
    // The cilium corner sits just before the first half-edge of the linear
    // order: CCW-before at a black vertex, CCW-after at a white one. Either
    // way it is the left face of the flanking half-edge leaving the vertex.
    int flank;
    if (g.is_black(vid))
      flank = rot[(static_cast<std::size_t>(ci) + d - 1) % d];
    else
      flank = rot[static_cast<std::size_t>(ci)];
    bool leaving_bw = g.edge(flank).black == vid;
    ++count[fd.face_of(g.edge_index(flank), leaving_bw)];
  }
  return count;
}

const std::vector<ResolvedSeam>& EmbeddedBipartiteGraph::resolved_seams() const {
  if (seams_) return *seams_;
  const FaceData& fd = faces();
  auto seams = std::make_unique<std::vector<ResolvedSeam>>();
  std::set<int> punctured(surface.punctured_faces.begin(),
                          surface.punctured_faces.end());
  for (const auto& path : surface.seams) {
    auto resolve_from = [&](int start_face) -> std::optional<ResolvedSeam> {
      ResolvedSeam rs;
      rs.from_face = start_face;
      int cur = start_face;
      for (int eid : path) {
        int ei = edge_index(eid);
        int left = fd.face_of(ei, true);
        int right = fd.face_of(ei, false);
        int sign;
        if (cur == left)
          sign = 1;
        else if (cur == right)
          sign = -1;
        else
          return std::nullopt;
        if (rs.crossing_sign.count(eid)) return std::nullopt;
        rs.crossing_sign[eid] = sign;
        cur = (sign == 1) ? right : left;
      }
      rs.to_face = cur;
      if (!punctured.count(rs.to_face) || rs.to_face == start_face)
        return std::nullopt;
      return rs;
    };
    std::optional<ResolvedSeam> found;
    int ei0 = edge_index(path.front());
    for (int start : {fd.face_of(ei0, true), fd.face_of(ei0, false)}) {
      if (!punctured.count(start)) continue;
      if (auto rs = resolve_from(start)) {
        found = std::move(rs);
        break;
      }
    }
    if (!found)
      throw std::invalid_argument(
          "seam is not a dual path between two punctured faces");
    seams->push_back(std::move(*found));
  }
  seams_ = std::move(seams);
  return *seams_;
}

std::vector<int> seam_windings(const EmbeddedBipartiteGraph& g, const Walk& walk) {
  const auto& seams = g.resolved_seams();
  std::vector<int> w(seams.size(), 0);
  for (const auto& step : walk) {
    for (std::size_t s = 0; s < seams.size(); ++s) {
      auto it = seams[s].crossing_sign.find(step.edge);
      if (it == seams[s].crossing_sign.end()) continue;
      w[s] += (step.bw ? 1 : -1) * it->second;
    }
  }
  return w;
}

bool is_contractible(const EmbeddedBipartiteGraph& g, const Walk& walk) {
  for (int w : seam_windings(g, walk))
    if (w != 0) return false;
  return true;
}

}  // namespace webtrace
