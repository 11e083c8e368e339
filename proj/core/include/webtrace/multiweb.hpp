#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "webtrace/connection.hpp"
#include "webtrace/graph.hpp"
#include "webtrace/matrix.hpp"

namespace webtrace {

// Edge multiplicity function with degree n at every vertex.
struct Multiweb {
  std::size_t rank = 1;
  std::map<int, int> mult;  // edge id -> multiplicity; absent means 0

  int at(int edge_id) const {
    auto it = mult.find(edge_id);
    return it == mult.end() ? 0 : it->second;
  }
  bool is_proper() const {
    for (const auto& [e, m] : mult)
      if (m > 1) return false;
    return true;
  }
  friend bool operator==(const Multiweb& a, const Multiweb& b) {
    return a.rank == b.rank && a.mult == b.mult;
  }
  friend bool operator<(const Multiweb& a, const Multiweb& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.mult < b.mult;
  }
};

// Color sets per edge: S on the white side, T on the black side. Colors are
// 1..n; an edge-n-coloring is the special case S == T.
struct EdgeColorSets {
  std::set<int> S, T;
};
struct Coloring {
  std::map<int, EdgeColorSets> edges;
};

bool is_valid_multiweb(const EmbeddedBipartiteGraph& g, const Multiweb& m);

// All degree-n multiplicity functions, deterministic order (edges ascending
// id, multiplicities tried descending).
std::vector<Multiweb> enumerate_multiwebs(const EmbeddedBipartiteGraph& g,
                                          std::size_t n);

// Edge-n-coloring from the face height function (mod-n heights spread from
// the lowest face id; an edge of multiplicity k separates heights differing
// by k and carries the corresponding interval of colors).
Coloring height_coloring(const EmbeddedBipartiteGraph& g, const Multiweb& m);

bool is_valid_coloring(const EmbeddedBipartiteGraph& g, const Multiweb& m,
                       const Coloring& c);

// Exact number of edge-n-colorings (S == T), by backtracking.
long count_colorings(const EmbeddedBipartiteGraph& g, const Multiweb& m);

// Z_nd = sum over multiwebs of their coloring counts.
long partition_function(const EmbeddedBipartiteGraph& g, std::size_t n);

// Exact sampling from Pr(m) = count_colorings(m) / Z_nd.
Multiweb sample_multiweb(const EmbeddedBipartiteGraph& g, std::size_t n,
                         std::uint64_t seed);

namespace detail {

// Signature of the color word read around a vertex: half-edges taken in the
// cilium linear order, each edge's color set listed ascending.
int color_word_sign(const std::vector<std::set<int>>& sets_in_order);

// All subsets of `avail` (a sorted color list) of size k, ascending order.
std::vector<std::vector<int>> subsets_of_size(const std::vector<int>& avail,
                                              std::size_t k);

// Support edges incident to a vertex, in cilium linear order.
std::vector<int> support_order(const EmbeddedBipartiteGraph& g,
                               const Multiweb& m, const Cilia& cilia,
                               int vertex_id);

}  // namespace detail

// Web-trace via the signed coloring sum: for each assignment of black-side
// partitions T the independent white-vertex sums over S factor out, so the
// search runs over black vertices only, folding each white vertex as soon as
// its neighborhood is decided.
template <class R>
R trace(const EmbeddedBipartiteGraph& g, const Multiweb& m,
        const Connection<R>& conn, const Cilia& cilia) {
  const std::size_t n = m.rank;
  if (conn.rank != n) throw std::invalid_argument("connection rank mismatch");
  if (!is_valid_multiweb(g, m)) throw std::invalid_argument("invalid multiweb");

  std::vector<int> blacks, whites;
  for (const auto& v : g.vertices) {
    bool in_support = false;
    for (int eid : g.rotation.at(v.id))
      if (m.at(eid) > 0) in_support = true;
    if (!in_support) continue;
    if (!cilia.count(v.id)) throw std::invalid_argument("missing cilium");
    (v.color == VertexColor::Black ? blacks : whites).push_back(v.id);
  }
  R sample = conn.edge_matrix.empty()
                 ? throw std::invalid_argument("empty connection")
                 : conn.edge_matrix.begin()->second(0, 0);
  R zero = ring_zero(sample);
  if (blacks.empty()) return ring_one(sample);

  bool identity_conn = true;
  {
    Matrix<R> id = Matrix<R>::identity(n, sample);
    for (const auto& [eid, mat] : conn.edge_matrix)
      if (!(mat == id)) { identity_conn = false; break; }
  }

  std::vector<int> all_colors(n);
  for (std::size_t i = 0; i < n; ++i) all_colors[i] = static_cast<int>(i) + 1;

  // Per-vertex support edges in cilium order.
  std::map<int, std::vector<int>> order;
  for (int v : blacks) order[v] = detail::support_order(g, m, cilia, v);
  for (int v : whites) order[v] = detail::support_order(g, m, cilia, v);

  // Minor cache: edge id, (S, T) as sorted lists -> det of the minor with
  // rows S (white colors) and columns T (black colors), 0-based indices.
  std::map<std::tuple<int, std::vector<int>, std::vector<int>>, R> minors;
  auto minor_det = [&](int eid, const std::vector<int>& S,
                       const std::vector<int>& T) -> const R& {
    auto key = std::make_tuple(eid, S, T);
    auto it = minors.find(key);
    if (it == minors.end()) {
      std::vector<std::size_t> rs, cs;
      for (int s : S) rs.push_back(static_cast<std::size_t>(s - 1));
      for (int t : T) cs.push_back(static_cast<std::size_t>(t - 1));
      Matrix<R> sub = conn.at(eid).minor(rs, cs);
      it = minors.emplace(key, det_fraction_free(sub)).first;
    }
    return it->second;
  };

  // Enumerate ordered partitions of all colors into parts of the sizes of
  // the vertex's support edges (in cilium order); callback gets the parts.
  auto for_partitions = [&](const std::vector<int>& edges_in_order,
                            auto&& body) {
    std::vector<std::vector<int>> parts(edges_in_order.size());
    std::vector<int> avail = all_colors;
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == edges_in_order.size()) {
        body(parts);
        return;
      }
      std::size_t k = static_cast<std::size_t>(m.at(edges_in_order[i]));
      for (auto& sub : detail::subsets_of_size(avail, k)) {
        parts[i] = sub;
        std::vector<int> rest;
        std::set_difference(avail.begin(), avail.end(), sub.begin(), sub.end(),
                            std::back_inserter(rest));
        std::vector<int> saved = std::move(avail);
        avail = std::move(rest);
        self(self, i + 1);
        avail = std::move(saved);
      }
    };
    rec(rec, 0);
  };

  auto word_sign = [&](const std::vector<std::vector<int>>& parts) {
    std::vector<std::set<int>> sets;
    for (const auto& p : parts) sets.emplace_back(p.begin(), p.end());
    return detail::color_word_sign(sets);
  };

  // Black vertices whose assignment completes each white vertex.
  std::map<int, int> last_black_for_white;
  for (std::size_t bi = 0; bi < blacks.size(); ++bi)
    for (int eid : order[blacks[bi]]) {
      int w = g.edge(eid).white;
      last_black_for_white[w] = static_cast<int>(bi);
    }

  std::map<int, std::vector<int>> T_of_edge;  // black-side sets, sorted
  R total = zero;

  auto white_sum = [&](int w) {
    const auto& we = order[w];
    R acc = zero;
    for_partitions(we, [&](const std::vector<std::vector<int>>& parts) {
      if (identity_conn) {
        for (std::size_t i = 0; i < we.size(); ++i)
          if (parts[i] != T_of_edge.at(we[i])) return;
      }
      R term = ring_one(sample);
      bool dead = false;
      for (std::size_t i = 0; i < we.size() && !dead; ++i) {
        const R& d = minor_det(we[i], parts[i], T_of_edge.at(we[i]));
        if (is_zero(d)) { dead = true; break; }
        term = term * d;
      }
      if (dead) return;
      int s = word_sign(parts);
      if (s > 0)
        acc += term;
      else
        acc -= term;
    });
    return acc;
  };

  auto dfs = [&](auto&& self, std::size_t bi, R prefix) -> void {
    if (bi == blacks.size()) {
      total += prefix;
      return;
    }
    int b = blacks[bi];
    for_partitions(order[b], [&](const std::vector<std::vector<int>>& parts) {
      for (std::size_t i = 0; i < order[b].size(); ++i)
        T_of_edge[order[b][i]] = parts[i];
      R branch = prefix;
      int s = word_sign(parts);
      if (s < 0) branch = zero - branch;
      bool dead = false;
      for (int w : whites) {
        if (last_black_for_white.at(w) != static_cast<int>(bi)) continue;
        R ws = white_sum(w);
        if (is_zero(ws)) { dead = true; break; }
        branch = branch * ws;
      }
      if (!dead) self(self, bi + 1, branch);
    });
  };
  dfs(dfs, 0, ring_one(sample));
  return total;
}

// Independent tensor-network contraction for proper multiwebs: one
// permutation per vertex assigning colors to half-edges in cilium order.
template <class R>
R tensor_trace_oracle(const EmbeddedBipartiteGraph& g, const Multiweb& m,
                      const Connection<R>& conn, const Cilia& cilia) {
  const std::size_t n = m.rank;
  if (!m.is_proper()) throw std::invalid_argument("multiweb is not proper");
  if (!is_valid_multiweb(g, m)) throw std::invalid_argument("invalid multiweb");
  R sample = conn.edge_matrix.begin()->second(0, 0);
  R zero = ring_zero(sample);

  std::vector<int> verts;
  for (const auto& v : g.vertices) {
    for (int eid : g.rotation.at(v.id))
      if (m.at(eid) > 0) { verts.push_back(v.id); break; }
  }
  if (verts.empty()) return ring_one(sample);
  std::map<int, std::vector<int>> order;
  for (int v : verts) {
    order[v] = detail::support_order(g, m, cilia, v);
    if (order[v].size() != n)
      throw std::invalid_argument("proper multiweb degree mismatch");
  }
  // color_at[v] : half-edge position -> color (a permutation of 1..n)
  std::map<int, std::vector<int>> color_at;
  std::map<int, int> sign_of;
  R total = zero;
  auto rec = [&](auto&& self, std::size_t vi) -> void {
    if (vi == verts.size()) {
      R term = ring_one(sample);
      int s = 1;
      for (int v : verts) s *= sign_of[v];
      for (const auto& e : g.edges) {
        if (m.at(e.id) != 1) continue;
        const auto& ob = order[e.black];
        const auto& ow = order[e.white];
        int cb = 0, cw = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (ob[i] == e.id) cb = color_at[e.black][i];
          if (ow[i] == e.id) cw = color_at[e.white][i];
        }
        term = term * conn.at(e.id)(static_cast<std::size_t>(cw - 1),
                                    static_cast<std::size_t>(cb - 1));
      }
      if (s > 0)
        total += term;
      else
        total -= term;
      return;
    }
    int v = verts[vi];
    std::vector<int> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i) + 1;
    do {
      color_at[v] = perm;
      std::vector<std::set<int>> sets;
      for (int c : perm) sets.push_back({c});
      sign_of[v] = detail::color_word_sign(sets);
      self(self, vi + 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  rec(rec, 0);
  return total;
}

}  // namespace webtrace
