#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "webtrace/connection.hpp"
#include "webtrace/graph.hpp"
#include "webtrace/matrix.hpp"
#include "webtrace/multipoly.hpp"
#include "webtrace/multiweb.hpp"

namespace webtrace {

// Block Kasteleyn matrix: rows (w, i), columns (b, j), block (w, b) equal to
// epsilon_wb * phi_bw summed over parallel edges. Vertex order: ascending id.
template <class R>
Matrix<R> assemble(const EmbeddedBipartiteGraph& g, const Connection<R>& c,
                   const KasteleynSigns& s) {
  std::vector<int> blacks, whites;
  for (const auto& v : g.vertices)
    (v.color == VertexColor::Black ? blacks : whites).push_back(v.id);
  std::sort(blacks.begin(), blacks.end());
  std::sort(whites.begin(), whites.end());
  const std::size_t N = blacks.size();
  const std::size_t n = c.rank;
  if (N != whites.size()) throw std::invalid_argument("graph is not balanced");
  R sample = c.edge_matrix.begin()->second(0, 0);
  Matrix<R> K(N * n, N * n, ring_zero(sample));
  std::map<int, std::size_t> wrow, bcol;
  for (std::size_t i = 0; i < N; ++i) {
    wrow[whites[i]] = i;
    bcol[blacks[i]] = i;
  }
  for (const auto& e : g.edges) {
    auto sit = s.find(e.id);
    if (sit == s.end()) throw std::invalid_argument("missing Kasteleyn sign");
    const Matrix<R>& phi = c.at(e.id);
    std::size_t r0 = wrow.at(e.white) * n, c0 = bcol.at(e.black) * n;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (sit->second > 0)
          K(r0 + i, c0 + j) += phi(i, j);
        else
          K(r0 + i, c0 + j) -= phi(i, j);
      }
  }
  return K;
}

template <class R>
R det_tilde(const EmbeddedBipartiteGraph& g, const Connection<R>& c,
            const KasteleynSigns& s) {
  return det_fraction_free(assemble(g, c, s));
}

template <class R>
struct VerifyReport {
  R det;
  R trace_sum;
  int sign = 1;    // s with s * det == trace_sum
  bool match = false;
  Cilia cilia;
};

// Cilia used throughout verification: the positive construction when a
// perfect matching exists (no multiwebs exist otherwise, so any cilia do).
inline Cilia verification_cilia(const EmbeddedBipartiteGraph& g) {
  if (auto pm = perfect_matching(g)) return positive_cilia(g, *pm);
  Cilia c;
  for (const auto& v : g.vertices) c[v.id] = 0;
  return c;
}

// Global sign normalization: fixed per graph with the identity connection,
// whose trace sum is the (positive) n-dimer partition function.
inline int normalization_sign(const EmbeddedBipartiteGraph& g, std::size_t n,
                              const KasteleynSigns& s) {
  Connection<Rational> id = identity_connection(g, n);
  Rational det = det_tilde(g, id, s);
  long z = partition_function(g, n);
  if (z == 0 || is_zero(det)) return 1;
  return (sgn(det) > 0) == (z > 0) ? 1 : -1;
}

template <class R>
VerifyReport<R> verify_main(const EmbeddedBipartiteGraph& g, std::size_t n,
                            const Connection<R>& c) {
  KasteleynSigns s = kasteleyn_signs(g);
  VerifyReport<R> rep;
  rep.cilia = verification_cilia(g);
  rep.det = det_tilde(g, c, s);
  R sample = c.edge_matrix.begin()->second(0, 0);
  rep.trace_sum = ring_zero(sample);
  for (const auto& m : enumerate_multiwebs(g, n))
    rep.trace_sum += trace(g, m, c, rep.cilia);
  rep.sign = normalization_sign(g, n, s);
  R lhs = rep.det;
  if (rep.sign < 0) lhs = ring_zero(sample) - lhs;
  rep.match = (lhs == rep.trace_sum);
  return rep;
}

// Trace of one multiweb extracted from the Kasteleyn determinant: fresh
// variable x_e on every support edge, zero elsewhere, then the coefficient
// of prod x_e^{m_e}, sign-normalized as in verify_main.
inline Rational trace_via_det(const EmbeddedBipartiteGraph& g, const Multiweb& m,
                              const Connection<Rational>& c,
                              bool zero_nonsupport = true) {
  if (!is_valid_multiweb(g, m)) throw std::invalid_argument("invalid multiweb");
  std::vector<int> support;
  for (const auto& [eid, k] : m.mult)
    if (k > 0) support.push_back(eid);
  std::sort(support.begin(), support.end());
  std::vector<std::string> names;
  std::map<int, std::size_t> var_of;
  for (int eid : support) {
    var_of[eid] = names.size();
    names.push_back("x" + std::to_string(eid));
  }
  PolyRingPtr ring = make_ring(names);
  Connection<MultiPoly> pc;
  pc.rank = c.rank;
  for (const auto& e : g.edges) {
    Matrix<MultiPoly> mat(c.rank, c.rank, MultiPoly(ring));
    auto it = var_of.find(e.id);
    if (it != var_of.end()) {
      MultiPoly x = MultiPoly::variable(ring, names[it->second]);
      for (std::size_t i = 0; i < c.rank; ++i)
        for (std::size_t j = 0; j < c.rank; ++j)
          mat(i, j) = x * MultiPoly::constant(ring, c.at(e.id)(i, j));
    } else if (!zero_nonsupport) {
      for (std::size_t i = 0; i < c.rank; ++i)
        for (std::size_t j = 0; j < c.rank; ++j)
          mat(i, j) = MultiPoly::constant(ring, c.at(e.id)(i, j));
    }
    pc.edge_matrix.emplace(e.id, std::move(mat));
  }
  KasteleynSigns s = kasteleyn_signs(g);
  MultiPoly det = det_tilde(g, pc, s);
  Exponents target(names.size());
  for (int eid : support)
    target[var_of[eid]] = static_cast<unsigned>(m.at(eid));
  Rational coeff = det.coefficient(target);
  return normalization_sign(g, m.rank, s) < 0 ? -coeff : coeff;
}

}  // namespace webtrace
