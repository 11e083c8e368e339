#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace webtrace {

// Exact rational scalar. mpq_class keeps the canonical form we require
// (lowest terms, positive denominator, 0 = 0/1).
using Rational = mpq_class;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

// Canonical string form: "p" when q == 1, else "p/q". Two-argument
// mpq_class construction skips canonicalization, so do it here.
inline std::string to_string(const Rational& r) {
  mpq_class t(r);
  t.canonicalize();
  return t.get_str();
}

inline Rational rational_from_string(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace webtrace
