#include "webtrace/multiweb.hpp"

#include <numeric>
#include <queue>
#include <random>

namespace webtrace {

namespace detail {

int color_word_sign(const std::vector<std::set<int>>& sets_in_order) {
  std::vector<int> word;
  for (const auto& s : sets_in_order) word.insert(word.end(), s.begin(), s.end());
  int inversions = 0;
  for (std::size_t i = 0; i < word.size(); ++i)
    for (std::size_t j = i + 1; j < word.size(); ++j)
      if (word[i] > word[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

std::vector<std::vector<int>> subsets_of_size(const std::vector<int>& avail,
                                              std::size_t k) {
  std::vector<std::vector<int>> out;
  if (k > avail.size()) return out;
  if (k == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<int> sub;
    for (std::size_t i : idx) sub.push_back(avail[i]);
    out.push_back(std::move(sub));
    // next combination
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] != i + avail.size() - k) break;
      if (i == 0) return out;
    }
    if (idx[i] == i + avail.size() - k) return out;
    ++idx[i];
    for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<int> support_order(const EmbeddedBipartiteGraph& g,
                               const Multiweb& m, const Cilia& cilia,
                               int vertex_id) {
  std::vector<int> out;
  for (int eid : g.half_edge_order(vertex_id, cilia.at(vertex_id)))
    if (m.at(eid) > 0) out.push_back(eid);
  return out;
}

}  // namespace detail

bool is_valid_multiweb(const EmbeddedBipartiteGraph& g, const Multiweb& m) {
  for (const auto& [eid, k] : m.mult)
    if (k < 0 || static_cast<std::size_t>(k) > m.rank) return false;
  for (const auto& v : g.vertices) {
    int deg = 0;
    for (int eid : g.rotation.at(v.id)) deg += m.at(eid);
    if (deg != static_cast<int>(m.rank)) return false;
  }
  return true;
}

std::vector<Multiweb> enumerate_multiwebs(const EmbeddedBipartiteGraph& g,
                                          std::size_t n) {
  std::vector<int> eids;
  for (const auto& e : g.edges) eids.push_back(e.id);
  std::sort(eids.begin(), eids.end());

  std::map<int, int> residual;   // remaining degree need per vertex
  std::map<int, int> slack;      // n * (unprocessed incident edge count)
  for (const auto& v : g.vertices) {
    residual[v.id] = static_cast<int>(n);
    slack[v.id] = static_cast<int>(n) * static_cast<int>(g.rotation.at(v.id).size());
  }
  std::vector<Multiweb> out;
  Multiweb cur;
  cur.rank = n;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == eids.size()) {
      for (const auto& [v, r] : residual)
        if (r != 0) return;
      Multiweb m = cur;
      std::erase_if(m.mult, [](const auto& kv) { return kv.second == 0; });
      out.push_back(std::move(m));
      return;
    }
    const Edge& e = g.edge(eids[i]);
    int cap = std::min(residual[e.black], residual[e.white]);
    slack[e.black] -= static_cast<int>(n);
    slack[e.white] -= static_cast<int>(n);
    for (int k = cap; k >= 0; --k) {
      residual[e.black] -= k;
      residual[e.white] -= k;
      if (residual[e.black] <= slack[e.black] &&
          residual[e.white] <= slack[e.white]) {
        cur.mult[e.id] = k;
        self(self, i + 1);
      }
      residual[e.black] += k;
      residual[e.white] += k;
    }
    cur.mult.erase(e.id);
    slack[e.black] += static_cast<int>(n);
    slack[e.white] += static_cast<int>(n);
  };
  rec(rec, 0);
  return out;
}

Coloring height_coloring(const EmbeddedBipartiteGraph& g, const Multiweb& m) {
  if (!is_valid_multiweb(g, m)) throw std::invalid_argument("invalid multiweb");
  const int n = static_cast<int>(m.rank);
  const FaceData& fd = g.faces();
  // Heights mod n on faces: crossing an edge of multiplicity k from its
  // right to its left (relative to black->white) raises the height by k.
  std::vector<int> h(fd.faces.size(), -1);
  h[0] = 0;
  std::queue<int> q;
  q.push(0);
  std::vector<std::pair<int, int>> lr(g.edges.size());  // (left, right) face
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei)
    lr[ei] = {fd.face_of(static_cast<int>(ei), true),
              fd.face_of(static_cast<int>(ei), false)};
  while (!q.empty()) {
    int f = q.front();
    q.pop();
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
      auto [left, right] = lr[ei];
      if (left != f && right != f) continue;
      int k = m.at(g.edges[ei].id) % n;
      int other = (left == f) ? right : left;
      int oh = (left == f) ? (h[f] - k % n + n) % n : (h[f] + k) % n;
      if (h[other] < 0) {
        h[other] = oh;
        q.push(other);
      } else if (h[other] != oh) {
        throw std::domain_error("height function inconsistency");
      }
    }
  }
  Coloring col;
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    int k = m.at(g.edges[ei].id);
    if (k == 0) continue;
    int a = h[lr[ei].second];  // height on the right of black->white
    std::set<int> s;
    for (int t = 1; t <= k; ++t) s.insert((a + t - 1) % n + 1);
    col.edges[g.edges[ei].id] = {s, s};
  }
  return col;
}

bool is_valid_coloring(const EmbeddedBipartiteGraph& g, const Multiweb& m,
                       const Coloring& c) {
  const int n = static_cast<int>(m.rank);
  for (const auto& [eid, k] : m.mult) {
    if (k == 0) continue;
    auto it = c.edges.find(eid);
    if (it == c.edges.end()) return false;
    if (static_cast<int>(it->second.S.size()) != k ||
        static_cast<int>(it->second.T.size()) != k)
      return false;
  }
  for (const auto& v : g.vertices) {
    std::set<int> seen;
    int total = 0;
    for (int eid : g.rotation.at(v.id)) {
      if (m.at(eid) == 0) continue;
      auto it = c.edges.find(eid);
      if (it == c.edges.end()) return false;
      const auto& side =
          v.color == VertexColor::Black ? it->second.T : it->second.S;
      for (int col : side) {
        if (col < 1 || col > n) return false;
        seen.insert(col);
      }
      total += static_cast<int>(side.size());
    }
    if (total != n || static_cast<int>(seen.size()) != n) return false;
  }
  return true;
}

long count_colorings(const EmbeddedBipartiteGraph& g, const Multiweb& m) {
  if (!is_valid_multiweb(g, m)) throw std::invalid_argument("invalid multiweb");
  const int n = static_cast<int>(m.rank);
  std::vector<int> eids;
  for (const auto& [eid, k] : m.mult)
    if (k > 0) eids.push_back(eid);
  std::sort(eids.begin(), eids.end());
  std::map<int, unsigned> used;  // vertex id -> color bitmask
  for (const auto& v : g.vertices) used[v.id] = 0;
  const unsigned full = (n >= 32) ? ~0u : ((1u << n) - 1);
  long count = 0;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == eids.size()) {
      ++count;
      return;
    }
    const Edge& e = g.edge(eids[i]);
    int k = m.at(eids[i]);
    unsigned blocked = used[e.black] | used[e.white];
    unsigned free_mask = full & ~blocked;
    // enumerate size-k submasks of free_mask
    std::vector<int> freec;
    for (int b = 0; b < n; ++b)
      if (free_mask & (1u << b)) freec.push_back(b);
    for (auto& sub : detail::subsets_of_size(freec, static_cast<std::size_t>(k))) {
      unsigned mask = 0;
      for (int b : sub) mask |= 1u << b;
      used[e.black] |= mask;
      used[e.white] |= mask;
      self(self, i + 1);
      used[e.black] &= ~mask;
      used[e.white] &= ~mask;
    }
  };
  rec(rec, 0);
  return count;
}

long partition_function(const EmbeddedBipartiteGraph& g, std::size_t n) {
  long z = 0;
  for (const auto& m : enumerate_multiwebs(g, n)) z += count_colorings(g, m);
  return z;
}

Multiweb sample_multiweb(const EmbeddedBipartiteGraph& g, std::size_t n,
                         std::uint64_t seed) {
  std::vector<Multiweb> all = enumerate_multiwebs(g, n);
  std::vector<long> w;
  long z = 0;
  for (const auto& m : all) {
    w.push_back(count_colorings(g, m));
    z += w.back();
  }
  if (z == 0) throw std::domain_error("empty multiweb measure");
  std::mt19937_64 rng(seed);
  const std::uint64_t zz = static_cast<std::uint64_t>(z);
  const std::uint64_t bound = ~std::uint64_t(0) - (~std::uint64_t(0) % zz);
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= bound);
  long pick = static_cast<long>(r % zz);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (pick < w[i]) return all[i];
    pick -= w[i];
  }
  return all.back();  // unreachable
}

}  // namespace webtrace
