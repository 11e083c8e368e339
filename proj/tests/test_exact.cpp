#include <doctest.h>

#include <random>

#include "webtrace/laurent.hpp"
#include "webtrace/matrix.hpp"
#include "webtrace/multipoly.hpp"
#include "webtrace/rational.hpp"

using namespace webtrace;

TEST_CASE("rational basics") {
  Rational a(1, 2), b(1, 3);
  CHECK(to_string(a + b) == "5/6");
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK(rational_from_string("-7/21") == Rational(-1, 3));
  CHECK(is_zero(a - a));
  CHECK_THROWS_AS(rational_from_string("x/y"), std::invalid_argument);
}

TEST_CASE("multipoly arithmetic and display") {
  auto ring = make_ring({"x", "y"});
  MultiPoly x = MultiPoly::variable(ring, "x");
  MultiPoly y = MultiPoly::variable(ring, "y");
  MultiPoly one = MultiPoly::constant(ring, Rational(1));
  MultiPoly p = (x + y) * (x - y);
  CHECK(p == x * x - y * y);
  CHECK(p.str() == "x^2 - y^2");
  CHECK(p.coefficient({2, 0}) == Rational(1));
  CHECK(p.coefficient({1, 1}) == Rational(0));
  CHECK((p * (x + one)).divide_exact(x + one) == p);
  CHECK_THROWS_AS((x + one).divide_exact(y), std::domain_error);
  CHECK(p.evaluate({Rational(3), Rational(2)}) == Rational(5));
  CHECK((x * x * y).derivative(0) == x * y * Rational(2));
}

TEST_CASE("laurent arithmetic") {
  LaurentPoly z = LaurentPoly::monomial(1, Rational(1));
  LaurentPoly zi = LaurentPoly::monomial(-1, Rational(1));
  LaurentPoly p = z + LaurentPoly::constant(Rational(3)) + zi;
  CHECK(p.coefficient(0) == Rational(3));
  CHECK(p.min_exponent() == -1);
  CHECK(p.max_exponent() == 1);
  CHECK((p * z).divide_exact(z) == p);
  CHECK((p * p).divide_exact(p) == p);
  CHECK(p.evaluate(Rational(2)) == Rational(11, 2));
  CHECK(p.str() == "z + 3 + z^-1");
  CHECK_THROWS_AS(p.evaluate(Rational(0)), std::domain_error);
}

TEST_CASE("determinant: identity and small symbolic cases") {
  Matrix<Rational> id3 = Matrix<Rational>::identity(3, Rational(0));
  CHECK(det_fraction_free(id3) == Rational(1));

  auto ring = make_ring({"x"});
  MultiPoly x = MultiPoly::variable(ring, "x");
  MultiPoly one = MultiPoly::constant(ring, Rational(1));
  Matrix<MultiPoly> m(2, 2, MultiPoly(ring));
  m(0, 0) = x;
  m(0, 1) = one;
  m(1, 0) = one;
  m(1, 1) = x;
  CHECK(det_fraction_free(m) == x * x - one);
}

TEST_CASE("determinant agrees with cofactor oracle") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + trial % 5;  // up to 6x6
    Matrix<Rational> m(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = Rational(static_cast<long>(rng() % 19) - 9);
    CHECK(det_fraction_free(m) == det_cofactor(m));
  }
}

TEST_CASE("determinant is multiplicative") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix<Rational> a(4, 4, Rational(0)), b(4, 4, Rational(0));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        a(i, j) = Rational(static_cast<long>(rng() % 11) - 5);
        b(i, j) = Rational(static_cast<long>(rng() % 11) - 5);
      }
    CHECK(det_fraction_free(a * b) ==
          det_fraction_free(a) * det_fraction_free(b));
  }
}

TEST_CASE("determinant over laurent entries") {
  LaurentPoly z = LaurentPoly::monomial(1, Rational(1));
  LaurentPoly zi = LaurentPoly::monomial(-1, Rational(1));
  LaurentPoly one = LaurentPoly::constant(Rational(1));
  Matrix<LaurentPoly> m(2, 2, LaurentPoly());
  m(0, 0) = z;
  m(0, 1) = one;
  m(1, 0) = one;
  m(1, 1) = zi;
  CHECK(det_fraction_free(m) == one - one);  // z * z^-1 - 1
  m(1, 1) = z + zi;
  CHECK(det_fraction_free(m) == z * (z + zi) - one);
  CHECK(det_fraction_free(m) == det_cofactor(m));
}

TEST_CASE("rational matrix inverse") {
  Matrix<Rational> a(3, 3, Rational(0));
  long vals[3][3] = {{2, 1, 0}, {1, 3, 1}, {0, 1, 2}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) a(i, j) = Rational(vals[i][j]);
  CHECK(a * inverse(a) == Matrix<Rational>::identity(3, Rational(0)));
  Matrix<Rational> s(2, 2, Rational(1));
  CHECK_THROWS_AS(inverse(s), std::domain_error);
}

static MultiPoly poly_const(const PolyRingPtr& r, long c) {
  return MultiPoly::constant(r, Rational(c));
}

TEST_CASE("product over characteristic roots") {
  auto ring = make_ring({"u", "v"});
  MultiPoly u = MultiPoly::variable(ring, "u");
  MultiPoly v = MultiPoly::variable(ring, "v");
  MultiPoly one = poly_const(ring, 1);

  // Q(t) = t: product of the roots is the constant term 1.
  CHECK(product_over_char_roots({MultiPoly(ring), one}, ring) == one);
  // Q(t) = t + 1: -p(-1) = 2 + 3u + 3v.
  MultiPoly q1 = product_over_char_roots({one, one}, ring);
  CHECK(q1 == poly_const(ring, 2) + u * Rational(3) + v * Rational(3));
  CHECK(q1.evaluate({Rational(1), Rational(1)}) == Rational(8));
  // constants cube
  CHECK(product_over_char_roots({poly_const(ring, 5)}, ring) ==
        poly_const(ring, 125));
  // zero polynomial
  CHECK(product_over_char_roots({}, ring).is_zero());
}

TEST_CASE("product over roots is multiplicative") {
  auto ring = make_ring({"u", "v"});
  std::mt19937_64 rng(99);
  auto random_q = [&](std::size_t deg) {
    std::vector<MultiPoly> q;
    for (std::size_t i = 0; i <= deg; ++i)
      q.push_back(poly_const(ring, static_cast<long>(rng() % 7) - 3));
    q.push_back(poly_const(ring, 1));  // keep the degree honest
    return q;
  };
  auto mul = [&](const std::vector<MultiPoly>& a,
                 const std::vector<MultiPoly>& b) {
    std::vector<MultiPoly> c(a.size() + b.size() - 1, MultiPoly(ring));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
  };
  for (int trial = 0; trial < 5; ++trial) {
    auto q1 = random_q(1 + trial % 2), q2 = random_q(1 + (trial + 1) % 2);
    CHECK(product_over_char_roots(mul(q1, q2), ring) ==
          product_over_char_roots(q1, ring) * product_over_char_roots(q2, ring));
  }
}

TEST_CASE("product over roots at u=v=1 is Q(1) cubed") {
  auto ring = make_ring({"u", "v"});
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<MultiPoly> q;
    Rational q_at_1(0);
    for (std::size_t i = 0; i <= 2 + trial % 3; ++i) {
      long c = static_cast<long>(rng() % 9) - 4;
      q.push_back(poly_const(ring, c));
      q_at_1 += Rational(c);
    }
    MultiPoly p = product_over_char_roots(q, ring);
    CHECK(p.evaluate({Rational(1), Rational(1)}) == q_at_1 * q_at_1 * q_at_1);
  }
}
