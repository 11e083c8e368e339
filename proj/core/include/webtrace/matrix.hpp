#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "webtrace/laurent.hpp"
#include "webtrace/multipoly.hpp"
#include "webtrace/rational.hpp"

namespace webtrace {

// Ring glue used by the generic determinant. A "sample" element carries the
// ring context (variable lists) that default construction cannot supply.
inline Rational ring_zero(const Rational&) { return Rational(0); }
inline Rational ring_one(const Rational&) { return Rational(1); }
inline Rational exact_div(const Rational& a, const Rational& b) { return a / b; }

inline MultiPoly ring_zero(const MultiPoly& s) { return MultiPoly(s.ring()); }
inline MultiPoly ring_one(const MultiPoly& s) {
  return MultiPoly::constant(s.ring(), Rational(1));
}
inline MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) {
  return a.divide_exact(b);
}

inline LaurentPoly ring_zero(const LaurentPoly& s) { return LaurentPoly(s.var()); }
inline LaurentPoly ring_one(const LaurentPoly& s) {
  return LaurentPoly::constant(Rational(1), s.var());
}
inline LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
  return a.divide_exact(b);
}

// Dense row-major matrix over an exact ring.
template <class R>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, const R& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const R& sample) {
    Matrix m(n, n, ring_zero(sample));
    R one = ring_one(sample);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  R& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const R& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    R zero = ring_zero(a.data_.empty() ? b.data_.at(0) : a.data_[0]);
    Matrix r(a.rows_, b.cols_, zero);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        for (std::size_t j = 0; j < b.cols_; ++j)
          r(i, j) += a(i, k) * b(k, j);
    return r;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("matrix shape mismatch");
    Matrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  // Submatrix with the given rows and columns (in the given order).
  Matrix minor(const std::vector<std::size_t>& rs,
               const std::vector<std::size_t>& cs) const {
    Matrix m(rs.size(), cs.size(), ring_zero(data_.at(0)));
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) m(i, j) = (*this)(rs[i], cs[j]);
    return m;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<R> data_;
};

// Bareiss fraction-free elimination. Exact over any integral domain with
// exact division; row pivoting with sign tracking.
template <class R>
R det_fraction_free(Matrix<R> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) throw std::invalid_argument("det of empty matrix");
  R zero = ring_zero(m(0, 0));
  R prev = ring_one(m(0, 0));
  bool neg = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && is_zero(m(piv, k))) ++piv;
    if (piv == n) return zero;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
      neg = !neg;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = exact_div(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
      m(i, k) = zero;
    }
    prev = m(k, k);
  }
  R d = m(n - 1, n - 1);
  if (neg) d = zero - d;
  return d;
}

// Cofactor expansion; test oracle for det_fraction_free, usable to ~6x6.
template <class R>
R det_cofactor(const Matrix<R>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  R acc = ring_zero(m(0, 0));
  std::vector<std::size_t> cols;
  for (std::size_t j = 1; j < n; ++j) cols.push_back(j);
  std::vector<std::size_t> rows;
  for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> cs;
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) cs.push_back(c);
    R term = m(0, j) * det_cofactor(m.minor(rows, cs));
    if (j % 2 == 0)
      acc += term;
    else
      acc = acc - term;
  }
  return acc;
}

// Gauss-Jordan inverse over the rationals. Throws on singular input.
inline Matrix<Rational> inverse(const Matrix<Rational>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square");
  const std::size_t n = a.rows();
  Matrix<Rational> m = a;
  Matrix<Rational> inv = Matrix<Rational>::identity(n, Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && is_zero(m(piv, k))) ++piv;
    if (piv == n) throw std::domain_error("singular matrix");
    if (piv != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(k, j));
        std::swap(inv(piv, j), inv(k, j));
      }
    Rational d = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= d;
      inv(k, j) /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || is_zero(m(i, k))) continue;
      Rational f = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

// Product of Q over the roots of lambda^3 - 3u*lambda^2 + 3v*lambda - 1,
// computed as the resultant with Q via a Sylvester determinant. Q is given by
// its coefficients (ascending degree) over the (u, v) polynomial ring; the
// cubic is monic, so the Sylvester determinant is exactly prod_i Q(x_i).
inline MultiPoly product_over_char_roots(std::vector<MultiPoly> q_coeffs,
                                         const PolyRingPtr& uv_ring) {
  MultiPoly zero(uv_ring);
  while (!q_coeffs.empty() && q_coeffs.back().is_zero()) q_coeffs.pop_back();
  if (q_coeffs.empty()) return zero;
  const std::size_t d = q_coeffs.size() - 1;  // deg Q
  MultiPoly one = MultiPoly::constant(uv_ring, Rational(1));
  if (d == 0) return q_coeffs[0] * q_coeffs[0] * q_coeffs[0];
  // p(lambda) = lambda^3 - 3u lambda^2 + 3v lambda - 1, descending coeffs.
  MultiPoly u = MultiPoly::variable(uv_ring, uv_ring->vars().at(0));
  MultiPoly v = MultiPoly::variable(uv_ring, uv_ring->vars().at(1));
  std::vector<MultiPoly> p = {one, zero - u * Rational(3), v * Rational(3),
                              zero - one};
  const std::size_t n = 3 + d;
  Matrix<MultiPoly> syl(n, n, zero);
  for (std::size_t i = 0; i < d; ++i)        // d shifted rows of p
    for (std::size_t j = 0; j < 4; ++j) syl(i, i + j) = p[j];
  for (std::size_t i = 0; i < 3; ++i)        // 3 shifted rows of Q (descending)
    for (std::size_t j = 0; j <= d; ++j) syl(d + i, i + j) = q_coeffs[d - j];
  return det_fraction_free(syl);
}

}  // namespace webtrace
