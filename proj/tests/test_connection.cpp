#include <doctest.h>

#include <random>

#include "suite.hpp"
#include "webtrace/connection.hpp"
#include "webtrace/matrix.hpp"

using namespace webtrace;

namespace {

Matrix<Rational> random_unimodular(std::size_t n, std::mt19937_64& rng) {
  Matrix<Rational> id = Matrix<Rational>::identity(n, Rational(0));
  Matrix<Rational> m = id;
  for (int s = 0; s < 4; ++s) {
    std::size_t i = rng() % n;
    std::size_t j = rng() % (n - 1);
    if (j >= i) ++j;
    Matrix<Rational> shear = id;
    shear(i, j) = Rational(static_cast<long>(rng() % 5) - 2);
    m = shear * m;
  }
  return m;
}

GaugeAssignment random_gauge(const EmbeddedBipartiteGraph& g, std::size_t n,
                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GaugeAssignment a;
  for (const auto& v : g.vertices) a.emplace(v.id, random_unimodular(n, rng));
  return a;
}

Rational matrix_trace(const Matrix<Rational>& m) {
  Rational t(0);
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

}  // namespace

TEST_CASE("identity connection") {
  auto th = suite::make_theta();
  auto c = identity_connection(th, 3);
  CHECK(c.edge_matrix.size() == 3);
  for (const auto& e : th.edges)
    CHECK(c.at(e.id) == Matrix<Rational>::identity(3, Rational(0)));
  auto c1 = identity_connection(th, 1);
  for (const auto& e : th.edges) CHECK(c1.at(e.id)(0, 0) == Rational(1));
}

TEST_CASE("random_sl: unimodular, deterministic, trivial at n=1") {
  auto c4 = suite::make_cycle(2);
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      auto c = random_sl(c4, n, seed);
      for (const auto& e : c4.edges)
        CHECK(det_fraction_free(c.at(e.id)) == Rational(1));
    }
  auto a = random_sl(c4, 3, 42), b = random_sl(c4, 3, 42);
  for (const auto& e : c4.edges) CHECK(a.at(e.id) == b.at(e.id));
  auto c1 = random_sl(c4, 1, 7);
  for (const auto& e : c4.edges) CHECK(c1.at(e.id)(0, 0) == Rational(1));
}

TEST_CASE("gauge transform: identity, inverse, composition") {
  auto th = suite::make_theta();
  auto c = random_sl(th, 3, 5);
  GaugeAssignment id_gauge;
  for (const auto& v : th.vertices)
    id_gauge.emplace(v.id, Matrix<Rational>::identity(3, Rational(0)));
  auto same = gauge_transform(th, c, id_gauge);
  for (const auto& e : th.edges) CHECK(same.at(e.id) == c.at(e.id));

  auto a = random_gauge(th, 3, 11);
  GaugeAssignment a_inv;
  for (const auto& [vid, m] : a) a_inv.emplace(vid, inverse(m));
  auto back = gauge_transform(th, gauge_transform(th, c, a), a_inv);
  for (const auto& e : th.edges) CHECK(back.at(e.id) == c.at(e.id));

  auto b = random_gauge(th, 3, 13);
  GaugeAssignment ab;
  for (const auto& [vid, m] : a) ab.emplace(vid, m * b.at(vid));
  auto two_step = gauge_transform(th, gauge_transform(th, c, a), b);
  auto one_step = gauge_transform(th, c, ab);
  for (const auto& e : th.edges) CHECK(two_step.at(e.id) == one_step.at(e.id));
}

TEST_CASE("monodromy") {
  auto th = suite::make_theta();
  auto id = identity_connection(th, 3);
  Walk loop = {{1, true}, {2, false}};
  CHECK(monodromy(th, id, loop) == Matrix<Rational>::identity(3, Rational(0)));

  std::mt19937_64 rng(21);
  Matrix<Rational> A = random_unimodular(3, rng), B = random_unimodular(3, rng),
                   C = random_unimodular(3, rng);
  Connection<Rational> c;
  c.rank = 3;
  c.edge_matrix = {{1, A}, {2, B}, {3, C}};
  CHECK(monodromy(th, c, loop) == inverse(B) * A);

  // base-point independence of the monodromy trace
  Walk from_white = {{2, false}, {1, true}};
  CHECK(matrix_trace(monodromy(th, c, loop)) ==
        matrix_trace(monodromy(th, c, from_white)));

  // monodromy of a gauged connection is conjugate to the original
  auto gauged = gauge_transform(th, c, random_gauge(th, 3, 99));
  CHECK(matrix_trace(monodromy(th, gauged, loop)) ==
        matrix_trace(monodromy(th, c, loop)));
  CHECK(det_fraction_free(monodromy(th, gauged, loop)) ==
        det_fraction_free(monodromy(th, c, loop)));

  // singular matrix on a reversed edge
  Connection<Rational> sing;
  sing.rank = 3;
  sing.edge_matrix = {{1, A}, {2, Matrix<Rational>(3, 3, Rational(0))}, {3, C}};
  CHECK_THROWS_AS(monodromy(th, sing, loop), std::domain_error);
}

TEST_CASE("flatness") {
  auto c4 = suite::make_cycle(2);
  auto id = identity_connection(c4, 2);
  CHECK(is_flat(c4, id));
  CHECK(is_flat(c4, gauge_transform(c4, id, random_gauge(c4, 2, 3))));

  auto shear = id;
  shear.edge_matrix.at(1)(0, 1) = Rational(1);
  CHECK(!is_flat(c4, shear));
}

TEST_CASE("random_sl matrices depend on the seed") {
  auto th = suite::make_theta();
  auto a = random_sl(th, 3, 1), b = random_sl(th, 3, 2);
  bool differ = false;
  for (const auto& e : th.edges) differ = differ || !(a.at(e.id) == b.at(e.id));
  CHECK(differ);
}
