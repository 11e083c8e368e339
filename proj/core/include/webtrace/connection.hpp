#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "webtrace/graph.hpp"
#include "webtrace/matrix.hpp"
#include "webtrace/rational.hpp"

namespace webtrace {

// Parallel transport phi_bw from the black to the white endpoint, per edge.
template <class R>
struct Connection {
  std::size_t rank = 1;
  std::map<int, Matrix<R>> edge_matrix;

  const Matrix<R>& at(int edge_id) const {
    auto it = edge_matrix.find(edge_id);
    if (it == edge_matrix.end())
      throw std::invalid_argument("connection missing an edge matrix");
    if (it->second.rows() != rank || it->second.cols() != rank)
      throw std::invalid_argument("connection matrix has wrong rank");
    return it->second;
  }
};

using GaugeAssignment = std::map<int, Matrix<Rational>>;  // vertex id -> SL_n

inline Connection<Rational> identity_connection(const EmbeddedBipartiteGraph& g,
                                                std::size_t n) {
  Connection<Rational> c;
  c.rank = n;
  Matrix<Rational> id = Matrix<Rational>::identity(n, Rational(0));
  for (const auto& e : g.edges) c.edge_matrix.emplace(e.id, id);
  return c;
}

// Each edge matrix is a product of 3-6 elementary shears I + q*E_ij, so the
// determinant is exactly 1. Raw engine outputs are mapped by modulus (not
// std::uniform_int_distribution) to keep the stream platform-independent.
inline Connection<Rational> random_sl(const EmbeddedBipartiteGraph& g,
                                      std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("rank must be at least 1");
  Connection<Rational> c;
  c.rank = n;
  std::mt19937_64 rng(seed);
  Matrix<Rational> id = Matrix<Rational>::identity(n, Rational(0));
  std::vector<int> ids;
  for (const auto& e : g.edges) ids.push_back(e.id);
  std::sort(ids.begin(), ids.end());
  for (int eid : ids) {
    Matrix<Rational> m = id;
    if (n >= 2) {
      std::size_t shears = 3 + rng() % 4;
      for (std::size_t s = 0; s < shears; ++s) {
        std::size_t i = rng() % n;
        std::size_t j = rng() % (n - 1);
        if (j >= i) ++j;
        long num = static_cast<long>(rng() % 5) - 2;
        long den = 1 + static_cast<long>(rng() % 3);
        Matrix<Rational> shear = id;
        shear(i, j) = Rational(num, den);
        shear(i, j).canonicalize();
        m = shear * m;
      }
    }
    c.edge_matrix.emplace(eid, m);
  }
  return c;
}

// phi'_bw = A_w^-1 phi_bw A_b.
inline Connection<Rational> gauge_transform(const EmbeddedBipartiteGraph& g,
                                            const Connection<Rational>& c,
                                            const GaugeAssignment& gauge) {
  Connection<Rational> out;
  out.rank = c.rank;
  std::map<int, Matrix<Rational>> inv_cache;
  for (const auto& e : g.edges) {
    auto ab = gauge.find(e.black);
    auto aw = gauge.find(e.white);
    if (ab == gauge.end() || aw == gauge.end())
      throw std::invalid_argument("gauge missing a vertex matrix");
    auto it = inv_cache.find(e.white);
    if (it == inv_cache.end())
      it = inv_cache.emplace(e.white, inverse(aw->second)).first;
    out.edge_matrix.emplace(e.id, it->second * c.at(e.id) * ab->second);
  }
  return out;
}

// Ordered product of phi and phi^-1 along a closed walk; the step matrices
// act left-to-right in walk order (latest step applied last).
inline Matrix<Rational> monodromy(const EmbeddedBipartiteGraph& g,
                                  const Connection<Rational>& c,
                                  const Walk& walk) {
  Matrix<Rational> m = Matrix<Rational>::identity(c.rank, Rational(0));
  for (const auto& step : walk) {
    const Matrix<Rational>& phi = c.at(step.edge);
    m = (step.bw ? phi : inverse(phi)) * m;
  }
  return m;
}

inline bool is_flat(const EmbeddedBipartiteGraph& g, const Connection<Rational>& c) {
  const FaceData& fd = g.faces();
  std::set<int> punctured(g.surface.punctured_faces.begin(),
                          g.surface.punctured_faces.end());
  Matrix<Rational> id = Matrix<Rational>::identity(c.rank, Rational(0));
  for (const auto& f : fd.faces) {
    if (punctured.count(f.id)) continue;  // not contractible
    if (!(monodromy(g, c, f.sides) == id)) return false;
  }
  return true;
}

}  // namespace webtrace
