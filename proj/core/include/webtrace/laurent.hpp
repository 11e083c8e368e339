#pragma once

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "webtrace/rational.hpp"

namespace webtrace {

// Single-variable Laurent polynomial with exact rational coefficients.
class LaurentPoly {
 public:
  using TermMap = std::map<long, Rational>;

  LaurentPoly() : var_("z") {}
  explicit LaurentPoly(std::string var) : var_(std::move(var)) {}

  static LaurentPoly constant(const Rational& c, std::string var = "z") {
    LaurentPoly p(std::move(var));
    if (!webtrace::is_zero(c)) p.terms_[0] = c;
    return p;
  }
  static LaurentPoly monomial(long exp, const Rational& c, std::string var = "z") {
    LaurentPoly p(std::move(var));
    if (!webtrace::is_zero(c)) p.terms_[exp] = c;
    return p;
  }

  const std::string& var() const { return var_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  long min_exponent() const { require_nonzero(); return terms_.begin()->first; }
  long max_exponent() const { require_nonzero(); return terms_.rbegin()->first; }

  Rational coefficient(long exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r(a.var_);
    for (const auto& [e, c] : a.terms_) r.terms_[e] = -c;
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r(a.var_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) {
    return !(a == b);
  }

  LaurentPoly shifted(long d) const {
    LaurentPoly r(var_);
    for (const auto& [e, c] : terms_) r.terms_[e + d] = c;
    return r;
  }

  // Exact division; the quotient must again be a Laurent polynomial.
  LaurentPoly divide_exact(const LaurentPoly& o) const {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (is_zero()) return LaurentPoly(var_);
    // Align to ordinary polynomials and do long division from the top.
    LaurentPoly r = shifted(-min_exponent());
    LaurentPoly d = o.shifted(-o.min_exponent());
    long shift = min_exponent() - o.min_exponent();
    LaurentPoly q(var_);
    const long dd = d.max_exponent();
    const Rational& dlc = d.terms_.rbegin()->second;
    while (!r.is_zero()) {
      long e = r.max_exponent() - dd;
      if (e < 0) throw std::domain_error("inexact Laurent division");
      Rational c = r.terms_.rbegin()->second / dlc;
      LaurentPoly t = LaurentPoly::monomial(e, c, var_);
      q += t;
      r -= t * d;
    }
    return q.shifted(shift);
  }

  Rational evaluate(const Rational& z) const {
    if (webtrace::is_zero(z) && !is_zero() && min_exponent() < 0)
      throw std::domain_error("pole at zero");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
      Rational t(c);
      Rational base = e >= 0 ? z : Rational(1) / z;
      for (long k = 0; k < std::labs(e); ++k) t *= base;
      acc += t;
    }
    return acc;
  }
  double evaluate(double z) const {
    double acc = 0;
    for (const auto& [e, c] : terms_) acc += to_double(c) * std::pow(z, double(e));
    return acc;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      auto [e, c] = *it;
      if (first) {
        if (sgn(c) < 0) { os << "-"; c = -c; }
      } else {
        os << (sgn(c) < 0 ? " - " : " + ");
        c = abs(c);
      }
      first = false;
      bool coeff_shown = (e == 0) || c != 1;
      if (coeff_shown) os << c.get_str();
      if (e != 0) {
        if (coeff_shown) os << "*";
        os << var_;
        if (e != 1) os << "^" << e;
      }
    }
    return os.str();
  }

 private:
  void require_nonzero() const {
    if (terms_.empty()) throw std::domain_error("zero Laurent polynomial");
  }
  void add_term(long e, const Rational& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!webtrace::is_zero(c)) terms_.emplace(e, c);
    } else {
      it->second += c;
      if (webtrace::is_zero(it->second)) terms_.erase(it);
    }
  }

  std::string var_;
  TermMap terms_;
};

inline bool is_zero(const LaurentPoly& p) { return p.is_zero(); }

}  // namespace webtrace
