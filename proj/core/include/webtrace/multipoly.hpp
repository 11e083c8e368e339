#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "webtrace/rational.hpp"

namespace webtrace {

// Ordered list of variable names shared by all polynomials of one ring.
class PolyRing {
 public:
  explicit PolyRing(std::vector<std::string> vars) : vars_(std::move(vars)) {}
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t arity() const { return vars_.size(); }
  int index_of(const std::string& v) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == v) return static_cast<int>(i);
    return -1;
  }

 private:
  std::vector<std::string> vars_;
};

using PolyRingPtr = std::shared_ptr<const PolyRing>;

inline PolyRingPtr make_ring(std::vector<std::string> vars) {
  return std::make_shared<const PolyRing>(std::move(vars));
}

using Exponents = std::vector<unsigned>;

// Graded lexicographic: total degree first, then lex. Used for the canonical
// term order (leading term = greatest).
struct GradedLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    unsigned da = std::accumulate(a.begin(), a.end(), 0u);
    unsigned db = std::accumulate(b.begin(), b.end(), 0u);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

// Sparse exact multivariate polynomial over Rational.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexLess>;

  MultiPoly() : ring_(make_ring({})) {}
  explicit MultiPoly(PolyRingPtr ring) : ring_(std::move(ring)) {}

  static MultiPoly constant(PolyRingPtr ring, const Rational& c) {
    MultiPoly p(std::move(ring));
    if (!webtrace::is_zero(c)) p.terms_[Exponents(p.ring_->arity(), 0)] = c;
    return p;
  }
  static MultiPoly variable(PolyRingPtr ring, const std::string& name) {
    int i = ring->index_of(name);
    if (i < 0) throw std::invalid_argument("unknown variable " + name);
    MultiPoly p(ring);
    Exponents e(ring->arity(), 0);
    e[static_cast<std::size_t>(i)] = 1;
    p.terms_[e] = Rational(1);
    return p;
  }
  static MultiPoly monomial(PolyRingPtr ring, Exponents e, const Rational& c) {
    MultiPoly p(std::move(ring));
    if (e.size() != p.ring_->arity())
      throw std::invalid_argument("exponent arity mismatch");
    if (!webtrace::is_zero(c)) p.terms_[std::move(e)] = c;
    return p;
  }

  const PolyRingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::accumulate(e.begin(), e.end(), 0u) == 0;
  }
  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_)
      d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
    return d;
  }

  Rational coefficient(const Exponents& e) const {
    if (e.size() != ring_->arity())
      throw std::invalid_argument("exponent arity mismatch");
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational constant_term() const {
    return coefficient(Exponents(ring_->arity(), 0));
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(const MultiPoly& a) {
    MultiPoly r(a.ring_);
    for (const auto& [e, c] : a.terms_) r.terms_[e] = -c;
    return r;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_ring(b);
    MultiPoly r(a.ring_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(ea);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly& operator*=(const Rational& c) {
    if (webtrace::is_zero(c)) {
      terms_.clear();
    } else {
      for (auto& [e, v] : terms_) v *= c;
    }
    return *this;
  }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) {
    return !(a == b);
  }

  // Exact division; throws if o does not divide *this in the ring.
  MultiPoly divide_exact(const MultiPoly& o) const {
    check_ring(o);
    if (o.is_zero()) throw std::domain_error("division by zero polynomial");
    MultiPoly q(ring_);
    MultiPoly r(*this);
    const auto& [ed, cd] = *o.terms_.rbegin();  // leading term of divisor
    while (!r.is_zero()) {
      const auto& [er, cr] = *r.terms_.rbegin();
      Exponents eq(er.size());
      for (std::size_t i = 0; i < er.size(); ++i) {
        if (er[i] < ed[i]) throw std::domain_error("inexact polynomial division");
        eq[i] = er[i] - ed[i];
      }
      Rational cq = cr / cd;
      q.add_term(eq, cq);
      r -= o * MultiPoly::monomial(ring_, eq, cq);
    }
    return q;
  }

  Rational evaluate(const std::vector<Rational>& x) const {
    if (x.size() != ring_->arity())
      throw std::invalid_argument("evaluation arity mismatch");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
      Rational t(c);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
      acc += t;
    }
    return acc;
  }

  MultiPoly derivative(std::size_t var) const {
    MultiPoly r(ring_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents e2(e);
      --e2[var];
      r.add_term(e2, c * Rational(static_cast<long>(e[var])));
    }
    return r;
  }

  // Canonical display, highest term first: "3*u^2*v - 1/2".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rational a = c;
      if (first) {
        if (sgn(a) < 0) { os << "-"; a = -a; }
      } else {
        os << (sgn(a) < 0 ? " - " : " + ");
        a = abs(a);
      }
      first = false;
      bool has_var = std::accumulate(e.begin(), e.end(), 0u) > 0;
      bool coeff_shown = !has_var || a != 1;
      if (coeff_shown) os << a.get_str();
      bool need_star = coeff_shown;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (need_star) os << "*";
        os << ring_->vars()[i];
        if (e[i] > 1) os << "^" << e[i];
        need_star = true;
      }
    }
    return os.str();
  }

 private:
  void check_ring(const MultiPoly& o) const {
    if (ring_ != o.ring_ && ring_->vars() != o.ring_->vars())
      throw std::invalid_argument("polynomial ring mismatch");
  }
  void add_term(const Exponents& e, const Rational& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!webtrace::is_zero(c)) terms_.emplace(e, c);
    } else {
      it->second += c;
      if (webtrace::is_zero(it->second)) terms_.erase(it);
    }
  }

  PolyRingPtr ring_;
  TermMap terms_;
};

inline bool is_zero(const MultiPoly& p) { return p.is_zero(); }

}  // namespace webtrace
