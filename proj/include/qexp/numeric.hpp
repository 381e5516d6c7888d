#pragma once

// Exact integer/rational arithmetic on top of GMP, plus the checked
// machine-integer helpers used for polynomial exponents.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qexp {

using Int = mpz_class;
using Rat = mpq_class;

// An exact identity or enclosure check failed; the computation cannot be
// trusted past this point.
struct check_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precision escalation hit its cap before an enclosure became usable.
struct precision_exhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

inline Int numerator(const Rat& r) { return r.get_num(); }
inline Int denominator(const Rat& r) { return r.get_den(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// base^e for signed e; e < 0 requires base != 0.
inline Rat pow_rat(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  unsigned long a = e > 0 ? static_cast<unsigned long>(e)
                          : static_cast<unsigned long>(-(e + 1)) + 1;
  Int n = pow_int(base.get_num(), a);
  Int d = pow_int(base.get_den(), a);
  if (e > 0) return make_rat(n, d);
  if (n == 0) throw std::domain_error("pow_rat: negative power of zero");
  return make_rat(d, n);
}

inline long checked_add(long a, long b) {
  long r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow in add");
  return r;
}

inline long checked_sub(long a, long b) {
  long r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("exponent overflow in sub");
  return r;
}

inline long checked_mul(long a, long b) {
  long r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("exponent overflow in mul");
  return r;
}

}  // namespace qexp
