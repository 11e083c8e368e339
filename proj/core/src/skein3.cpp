#include "webtrace/skein3.hpp"

#include <algorithm>
#include <stdexcept>

#include "webtrace/connection.hpp"
#include "webtrace/kasteleyn.hpp"
#include "webtrace/matrix.hpp"

namespace webtrace {

namespace {

bool is_chain_edge(const Multiweb& m, int eid) {
  int k = m.at(eid);
  return k == 1 || k == 2;
}

// Chain edges incident to a vertex, in rotation order.
std::vector<int> chain_edges_at(const EmbeddedBipartiteGraph& g,
                                const Multiweb& m, int vid) {
  std::vector<int> out;
  for (int eid : g.rotation.at(vid))
    if (is_chain_edge(m, eid)) out.push_back(eid);
  return out;
}

}  // namespace

ChainDecomposition find_chains(const EmbeddedBipartiteGraph& g,
                               const Multiweb& m) {
  if (m.rank != 3) throw std::invalid_argument("rank-3 multiweb required");
  if (!is_valid_multiweb(g, m)) throw std::invalid_argument("invalid multiweb");
  ChainDecomposition dec;
  for (const auto& [eid, k] : m.mult)
    if (k == 3) dec.tripled.push_back(eid);
  std::sort(dec.tripled.begin(), dec.tripled.end());
  std::map<int, std::vector<int>> at;  // vertex -> chain edges
  for (const auto& v : g.vertices) {
    auto ce = chain_edges_at(g, m, v.id);
    if (ce.size() == 3) dec.trivalent.insert(v.id);
    if (!ce.empty()) at[v.id] = std::move(ce);
  }
  std::set<int> used;
  auto other_endpoint = [&](int eid, int vid) {
    const Edge& e = g.edge(eid);
    return e.black == vid ? e.white : e.black;
  };
  // Walk from (vid, eid) until a trivalent vertex or back to the start.
  auto walk_from = [&](int vid, int eid, Chain& c) {
    c.vertices.push_back(vid);
    int cur_v = vid, cur_e = eid;
    while (true) {
      used.insert(cur_e);
      c.edges.push_back(cur_e);
      int nxt = other_endpoint(cur_e, cur_v);
      if (dec.trivalent.count(nxt)) {
        c.vertices.push_back(nxt);
        c.closed = false;
        return;
      }
      if (nxt == c.vertices.front() && c.edges.size() > 1) {
        c.closed = true;
        return;
      }
      c.vertices.push_back(nxt);
      const auto& ce = at.at(nxt);
      if (ce.size() != 2)
        throw std::logic_error("chain vertex without exactly two chain edges");
      int follow = (ce[0] == cur_e) ? ce[1] : ce[0];
      if (used.count(follow)) {  // closed pair of parallel edges
        c.closed = true;
        return;
      }
      cur_v = nxt;
      cur_e = follow;
    }
  };
  // Open chains first, from trivalent vertices in ascending order.
  for (int tv : dec.trivalent) {
    std::vector<int> ce = at.at(tv);
    std::sort(ce.begin(), ce.end());
    for (int eid : ce) {
      if (used.count(eid)) continue;
      Chain c;
      walk_from(tv, eid, c);
      dec.chains.push_back(std::move(c));
    }
  }
  // Remaining chain edges form closed chains.
  std::vector<int> rest;
  for (const auto& [eid, k] : m.mult)
    if (is_chain_edge(m, eid) && !used.count(eid)) rest.push_back(eid);
  std::sort(rest.begin(), rest.end());
  for (int eid : rest) {
    if (used.count(eid)) continue;
    Chain c;
    walk_from(g.edge(eid).black, eid, c);
    if (!c.closed) throw std::logic_error("open chain without trivalent ends");
    dec.chains.push_back(std::move(c));
  }
  return dec;
}

Walk chain_walk(const EmbeddedBipartiteGraph& g, const Multiweb& m,
                const Chain& chain) {
  Walk w;
  for (std::size_t i = 0; i < chain.edges.size(); ++i) {
    int from = chain.vertices[i];
    w.push_back({chain.edges[i], g.edge(chain.edges[i]).black == from});
  }
  // Normalize orientation so single edges run black -> white.
  for (const auto& s : w) {
    if (m.at(s.edge) != 1) continue;
    if (!s.bw) {
      Walk rev;
      for (auto it = w.rbegin(); it != w.rend(); ++it)
        rev.push_back({it->edge, !it->bw});
      return rev;
    }
    break;
  }
  return w;
}

SkeinTerm apply_loop_move(const EmbeddedBipartiteGraph& g, const Multiweb& m,
                          const Chain& chain) {
  if (!chain.closed) throw std::invalid_argument("loop move needs a closed chain");
  if (!is_contractible(g, chain_walk(g, m, chain)))
    throw std::invalid_argument("loop move needs a contractible chain");
  SkeinTerm t;
  t.coeff = 3;
  t.web = m;
  for (int eid : chain.edges) {
    int k = m.at(eid);
    t.web.mult[eid] = (k == 2) ? 3 : 0;
  }
  std::erase_if(t.web.mult, [](const auto& kv) { return kv.second == 0; });
  return t;
}

namespace {

std::pair<SkeinTerm, SkeinTerm> alternate_cycle(const EmbeddedBipartiteGraph& g,
                                                const Multiweb& m,
                                                const Walk& cycle) {
  if (cycle.size() % 2 != 0)
    throw std::invalid_argument("cycle must have even length");
  SkeinTerm a, b;
  a.web = m;
  b.web = m;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    int eid = cycle[i].edge;
    int delta = (i % 2 == 0) ? 1 : -1;
    a.web.mult[eid] = m.at(eid) + delta;
    b.web.mult[eid] = m.at(eid) - delta;
    if (a.web.mult[eid] < 0 || a.web.mult[eid] > 3 || b.web.mult[eid] < 0 ||
        b.web.mult[eid] > 3)
      throw std::invalid_argument("cycle multiplicities out of range");
  }
  std::erase_if(a.web.mult, [](const auto& kv) { return kv.second == 0; });
  std::erase_if(b.web.mult, [](const auto& kv) { return kv.second == 0; });
  if (!is_valid_multiweb(g, a.web) || !is_valid_multiweb(g, b.web))
    throw std::invalid_argument("move produced an invalid multiweb");
  return {a, b};
}

}  // namespace

std::pair<SkeinTerm, SkeinTerm> apply_bigon_move(const EmbeddedBipartiteGraph& g,
                                                 const Multiweb& m,
                                                 const Walk& cycle) {
  return alternate_cycle(g, m, cycle);
}

std::pair<SkeinTerm, SkeinTerm> apply_square_move(const EmbeddedBipartiteGraph& g,
                                                  const Multiweb& m,
                                                  const Walk& cycle) {
  return alternate_cycle(g, m, cycle);
}

namespace {

struct RegionWalks {
  // boundary walks of the chain sub-map with their region representative
  std::vector<Walk> walks;
  std::vector<int> region_of_walk;
  std::map<int, int> walks_per_region;
  std::set<int> punctured_regions;
};

RegionWalks region_walks(const EmbeddedBipartiteGraph& g, const Multiweb& m) {
  const FaceData& fd = g.faces();
  // Union g-faces across non-chain edges (multiplicity 0 or 3).
  std::vector<int> parent(fd.faces.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    if (is_chain_edge(m, g.edges[ei].id)) continue;
    int a = find(fd.face_of(static_cast<int>(ei), true));
    int b = find(fd.face_of(static_cast<int>(ei), false));
    if (a != b) parent[static_cast<std::size_t>(a)] = b;
  }
  RegionWalks rw;
  for (int f : g.surface.punctured_faces) rw.punctured_regions.insert(find(f));

  // Face traversal of the chain sub-map.
  auto next_side = [&](const FaceSide& s) -> FaceSide {
    int head = g.endpoint(s.edge, !s.bw);
    const auto& rot = g.rotation.at(head);
    std::size_t pos = 0;
    while (rot[pos] != s.edge) ++pos;
    for (std::size_t step = 1; step <= rot.size(); ++step) {
      int f = rot[(pos + rot.size() - step) % rot.size()];
      if (!is_chain_edge(m, f)) continue;
      return FaceSide{f, g.edge(f).black == head};
    }
    throw std::logic_error("chain edge with no successor");
  };
  std::set<std::pair<int, bool>> seen;
  for (const auto& e : g.edges) {
    if (!is_chain_edge(m, e.id)) continue;
    for (bool bw : {true, false}) {
      if (seen.count({e.id, bw})) continue;
      Walk w;
      FaceSide s{e.id, bw};
      do {
        w.push_back(s);
        seen.insert({s.edge, s.bw});
        s = next_side(s);
      } while (!(s.edge == e.id && s.bw == bw));
      int region = find(fd.face_of(g.edge_index(w[0].edge), w[0].bw));
      rw.walks.push_back(std::move(w));
      rw.region_of_walk.push_back(region);
      rw.walks_per_region[region] += 1;
    }
  }
  return rw;
}

// Trivalent-corner visits of a walk: the head vertices of its sides.
std::vector<int> trivalent_corners(const EmbeddedBipartiteGraph& g,
                                   const ChainDecomposition& dec,
                                   const Walk& w) {
  std::vector<int> out;
  for (const auto& s : w) {
    int head = g.endpoint(s.edge, !s.bw);
    if (dec.trivalent.count(head)) out.push_back(head);
  }
  return out;
}

bool distinct_edges(const Walk& w) {
  std::set<int> e;
  for (const auto& s : w)
    if (!e.insert(s.edge).second) return false;
  return true;
}

}  // namespace

std::optional<MoveCandidate> find_move(const EmbeddedBipartiteGraph& g,
                                       const Multiweb& m) {
  ChainDecomposition dec = find_chains(g, m);
  // 1. contractible closed chains
  for (const auto& c : dec.chains) {
    if (!c.closed) continue;
    if (is_contractible(g, chain_walk(g, m, c))) {
      MoveCandidate mc;
      mc.kind = MoveCandidate::Kind::Loop;
      mc.chain = c;
      return mc;
    }
  }
  RegionWalks rw = region_walks(g, m);
  auto candidate = [&](std::size_t target_corners) -> std::optional<MoveCandidate> {
    for (std::size_t i = 0; i < rw.walks.size(); ++i) {
      int region = rw.region_of_walk[i];
      if (rw.punctured_regions.count(region)) continue;
      if (rw.walks_per_region.at(region) != 1) continue;
      const Walk& w = rw.walks[i];
      if (!distinct_edges(w)) continue;
      if (!is_contractible(g, w)) continue;
      std::vector<int> corners = trivalent_corners(g, dec, w);
      std::set<int> uniq(corners.begin(), corners.end());
      if (corners.size() != target_corners || uniq.size() != target_corners)
        continue;
      MoveCandidate mc;
      mc.kind = target_corners == 2 ? MoveCandidate::Kind::Bigon
                                    : MoveCandidate::Kind::Square;
      mc.cycle = w;
      return mc;
    }
    return std::nullopt;
  };
  if (auto b = candidate(2)) return b;
  if (auto s = candidate(4)) return s;
  return std::nullopt;
}

std::pair<int, int> reduction_measure(const EmbeddedBipartiteGraph& g,
                                      const Multiweb& m) {
  ChainDecomposition dec = find_chains(g, m);
  int singles = 0;
  for (const auto& [eid, k] : m.mult)
    if (k == 1) ++singles;
  return {static_cast<int>(dec.trivalent.size()), singles};
}

ReductionResult reduce_annulus(const EmbeddedBipartiteGraph& g,
                               const Multiweb& m) {
  ReductionResult res;
  std::map<Multiweb, long> work;
  work[m] = 1;
  while (!work.empty()) {
    auto [web, coeff] = *work.begin();
    work.erase(work.begin());
    auto mv = find_move(g, web);
    if (!mv) {
      ChainDecomposition dec = find_chains(g, web);
      if (!dec.trivalent.empty())
        throw std::runtime_error("unreduced web admits no move");
      int j = 0, k = 0;
      for (const auto& c : dec.chains) {
        if (!c.closed) throw std::runtime_error("open chain in reduced web");
        std::vector<int> winds = seam_windings(g, chain_walk(g, web, c));
        if (winds.empty() || winds[0] == 0)
          throw std::runtime_error("contractible loop in reduced web");
        if (winds[0] > 0)
          ++j;
        else
          ++k;
      }
      res.classes[{j, k}] += coeff;
      continue;
    }
    if (mv->kind == MoveCandidate::Kind::Loop) {
      SkeinTerm t = apply_loop_move(g, web, mv->chain);
      work[t.web] += coeff * t.coeff;
    } else {
      auto [a, b] = alternate_cycle(g, web, mv->cycle);
      work[a.web] += coeff * a.coeff;
      work[b.web] += coeff * b.coeff;
    }
  }
  return res;
}

std::pair<long, long> pants_Z1(const EmbeddedBipartiteGraph& g) {
  if (g.surface.kind != SurfaceKind::Pants)
    throw std::invalid_argument("pants surface required");
  const auto& seams = g.resolved_seams();
  if (seams.size() != 2) throw std::invalid_argument("two seams required");

  auto mono_A = [](const Rational& a) {
    Matrix<Rational> A = Matrix<Rational>::identity(3, Rational(0));
    A(0, 1) = a;
    A(0, 2) = 1;
    A(1, 2) = 1;
    return A;
  };
  auto mono_B = [](const Rational& a) {
    Matrix<Rational> B = Matrix<Rational>::identity(3, Rational(0));
    B(1, 0) = 1;
    B(2, 0) = -a;
    B(2, 1) = -a * a;
    return B;
  };

  KasteleynSigns signs = kasteleyn_signs(g);
  const std::vector<Rational> samples = {Rational(-2), Rational(-1), Rational(0),
                                         Rational(1), Rational(2)};
  for (int s1 : {1, -1}) {
    for (int s2 : {1, -1}) {
      std::vector<Rational> dets;
      for (const Rational& a : samples) {
        Matrix<Rational> M1 = mono_A(a), M2 = mono_B(a);
        Matrix<Rational> M1i = inverse(M1), M2i = inverse(M2);
        Connection<Rational> conn;
        conn.rank = 3;
        for (const auto& e : g.edges) {
          Matrix<Rational> phi = Matrix<Rational>::identity(3, Rational(0));
          for (std::size_t si = 0; si < 2; ++si) {
            auto it = seams[si].crossing_sign.find(e.id);
            if (it == seams[si].crossing_sign.end()) continue;
            int exp = it->second * (si == 0 ? s1 : s2);
            const Matrix<Rational>& f =
                (si == 0) ? (exp > 0 ? M1 : M1i) : (exp > 0 ? M2 : M2i);
            phi = f * phi;
          }
          conn.edge_matrix.emplace(e.id, std::move(phi));
        }
        dets.push_back(det_tilde(g, conn, signs));
      }
      // interpolate the quartic through a = -2..2
      Matrix<Rational> V(5, 5, Rational(0));
      for (std::size_t i = 0; i < 5; ++i) {
        Rational p(1);
        for (std::size_t j = 0; j < 5; ++j) {
          V(i, j) = p;
          p *= samples[i];
        }
      }
      Matrix<Rational> Vi = inverse(V);
      std::vector<Rational> coef(5, Rational(0));
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) coef[i] += Vi(i, j) * dets[j];
      if (!is_zero(coef[1]) || !is_zero(coef[3]) || !is_zero(coef[4])) continue;
      Rational c0 = coef[0], c2 = coef[2];
      int sign = sgn(c0 + 6 * c2) >= 0 ? 1 : -1;
      Rational Z1 = Rational(sign) * c2;
      Rational Z0 = Rational(sign) * c0 - 6 * Z1;
      if (Z0.get_den() != 1 || Z1.get_den() != 1 || sgn(Z1) < 0 || sgn(Z0) < 0)
        continue;
      return {Z0.get_num().get_si(), Z1.get_num().get_si()};
    }
  }
  throw std::domain_error("no orientation gives the expected pants structure");
}

}  // namespace webtrace
