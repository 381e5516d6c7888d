#pragma once

// q-series primitives: q-Pochhammer products, q-binomial coefficients and
// the classical range checks on (q)_k that the size estimates rely on.
//
//   (a)_0 = 1,  (a)_n = (1-a)(1-aq)...(1-aq^{n-1})
//   [n k]_q = (q)_n / ((q)_k (q)_{n-k}),  an integer polynomial in q.

#include <vector>

#include "qexp/bipoly.hpp"
#include "qexp/numeric.hpp"
#include "qexp/qpoly.hpp"

namespace qexp {

// (a)_n with rational a and q.
inline Rat q_pochhammer(const Rat& a, long n, const Rat& q) {
  if (n < 0) throw std::domain_error("q_pochhammer: n < 0");
  Rat acc(1);
  Rat aq = a;
  for (long j = 0; j < n; ++j) {
    acc *= (Rat(1) - aq);
    aq *= q;
  }
  return acc;
}

// (q^m)_n as an exact element of Z[q]: prod_{j<n} (1 - q^{m+j}).
inline QPoly q_pochhammer_qpow(long m, long n) {
  if (n < 0) throw std::domain_error("q_pochhammer_qpow: n < 0");
  QPoly acc = QPoly::one();
  for (long j = 0; j < n; ++j) {
    QPoly f = QPoly::one();
    f.add_term(checked_add(m, j), Int(-1));
    acc *= f;
  }
  return acc;
}

// (q)_n = (q^1)_n.
inline QPoly q_factorial_poly(long n) { return q_pochhammer_qpow(1, n); }

// (t)_K = prod_{j<K} (1 - t q^j) as an element of Z[q, t].
inline BiPoly t_pochhammer(long K) {
  if (K < 0) throw std::domain_error("t_pochhammer: K < 0");
  BiPoly acc = BiPoly::one();
  for (long j = 0; j < K; ++j) {
    BiPoly f = BiPoly::one();
    f.add_term(j, 1, Int(-1));
    acc *= f;
  }
  return acc;
}

// [n k]_q via the Pascal recurrence [n k] = [n-1 k-1] + q^k [n-1 k],
// pure integer additions. The quotient definition is kept as a test
// oracle only (see QPoly::divide_exact).
inline QPoly q_binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) throw std::domain_error("q_binomial: need 0 <= k <= n");
  // row[j] holds [i j] while building row i upward.
  std::vector<QPoly> row(static_cast<std::size_t>(k) + 1);
  row[0] = QPoly::one();
  for (long i = 1; i <= n; ++i) {
    const long jmax = std::min(i, k);
    for (long j = jmax; j >= 1; --j) {
      QPoly upper = (j == i) ? QPoly::zero() : row[static_cast<std::size_t>(j)].shifted(j);
      row[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j) - 1] + upper;
    }
  }
  return row[static_cast<std::size_t>(k)];
}

// Checks the (q)_k range facts used by the estimates, for q = 1/d:
//   0 < q <= 1/2:  1/4 < (q)_k <= 1
//   -1/2 <= q < 0: 1   <= (q)_k <= 3/2
// for every 0 <= k <= kmax. Exact rational comparison. The negative-q
// upper bound is attained at k = 1 ((q)_1 = 1 + |q|), so the closed form
// of the range is the sound reading.
inline bool pochhammer_bounds_check(const Rat& q, long kmax) {
  const Rat quarter = make_rat(1, 4);
  const Rat three_half = make_rat(3, 2);
  Rat acc(1);
  Rat qk(1);
  for (long k = 0; k <= kmax; ++k) {
    if (q > 0) {
      if (!(acc > quarter && acc <= 1)) return false;
    } else {
      if (!(acc >= 1 && acc <= three_half)) return false;
    }
    qk *= q;
    acc *= (Rat(1) - qk);
  }
  return true;
}

}  // namespace qexp
