#pragma once

// Explicit Pade approximation system for the q-exponential:
//
//   B_n(t) = sum_k [n k]_q q^{k(k-1)/2} (q^{n+1})_{n-k} (-t)^k
//   A_n(t) = sum_k [n k]_q q^{kn}       (q^{n+1})_{n-k} t^k
//   B_n(t) E_q(t) - A_n(t) = S_n(t),
//
// where the remainder series
//
//   S_n(t) = (-1)^n t^{2n+1} q^{(3n^2+n)/2} ((q)_n/(q)_{2n+1})
//            * sum_{k>=0} [(q^{n+1})_k / ((q)_k (q^{2n+2})_k)] t^k
//
// vanishes to order t^{2n+1}. S_n is never materialised: it is carried as
// the prefactor plus a lazy stream of exact term coefficients.

#include <utility>
#include <vector>

#include "qexp/bipoly.hpp"
#include "qexp/numeric.hpp"
#include "qexp/qseries.hpp"

namespace qexp {

// (-1)^n t^{2n+1} q^{(3n^2+n)/2} (q)_n/(q)_{2n+1}, kept in factored form.
struct TailPrefactor {
  long n = 0;

  int sign() const { return (n % 2 == 0) ? 1 : -1; }
  long q_exp() const { return checked_mul(n, checked_add(checked_mul(3, n), 1)) / 2; }
  long t_exp() const { return checked_add(checked_mul(2, n), 1); }

  // Scalar part (everything except t^{2n+1}) at rational q.
  Rat scalar_at(const Rat& q) const {
    Rat v = pow_rat(q, q_exp()) * q_pochhammer(q, n, q) / q_pochhammer(q, 2 * n + 1, q);
    return sign() > 0 ? v : Rat(-v);
  }
};

// Lazy generator of the exact tail coefficients
//   c_k = (q^{n+1})_k / ((q)_k (q^{2n+2})_k),  c_0 = 1,
// via c_{k+1} = c_k (1-q^{n+1+k}) / ((1-q^{k+1})(1-q^{2n+2+k})).
class TailTerms {
 public:
  TailTerms(long n, Rat q) : n_(n), q_(std::move(q)), cur_(1) {
    q_pow_np1_ = pow_rat(q_, n_ + 1);
    q_pow_1_ = q_;
    q_pow_2np2_ = pow_rat(q_, 2 * n_ + 2);
  }

  // Returns c_k for the current k, then advances.
  Rat next() {
    Rat out = cur_;
    cur_ *= (Rat(1) - q_pow_np1_);
    cur_ /= (Rat(1) - q_pow_1_) * (Rat(1) - q_pow_2np2_);
    q_pow_np1_ *= q_;
    q_pow_1_ *= q_;
    q_pow_2np2_ *= q_;
    ++k_;
    return out;
  }

  long index() const { return k_; }

 private:
  long n_;
  Rat q_;
  Rat cur_;
  Rat q_pow_np1_, q_pow_1_, q_pow_2np2_;
  long k_ = 0;
};

struct PadeSystem {
  long n = 0;
  BiPoly A;  // deg_t = n
  BiPoly B;  // deg_t = n
  TailPrefactor prefactor;

  TailTerms tail_terms_at(const Rat& q) const { return TailTerms(n, q); }
};

inline PadeSystem build_pade(long n) {
  if (n < 0) throw std::domain_error("build_pade: n < 0");
  PadeSystem sys;
  sys.n = n;
  sys.prefactor = TailPrefactor{n};
  for (long k = 0; k <= n; ++k) {
    QPoly common = q_binomial(n, k) * q_pochhammer_qpow(n + 1, n - k);
    QPoly a_coeff = common.shifted(checked_mul(k, n));
    QPoly b_coeff = common.shifted(k * (k - 1) / 2);
    if (k % 2 != 0) b_coeff = -b_coeff;
    sys.A += BiPoly::from_qpoly(a_coeff, k);
    sys.B += BiPoly::from_qpoly(b_coeff, k);
  }
  return sys;
}

// Formal power series of B_n(t) E_q(t) - A_n(t) in Q[[t]] at fixed rational
// q, truncated at t^order. Coefficients of t^0..t^{2n} must vanish exactly
// and the t^{2n+1} coefficient must match the closed-form leading constant;
// every further computed coefficient is cross-checked against the tail
// stream. Returns the t^{2n+1} coefficient.
inline Rat verify_pade_identity(const PadeSystem& sys, const Rat& q, long order) {
  const long n = sys.n;
  if (order < 2 * n + 2) throw std::domain_error("verify_pade_identity: order < 2n+2");
  if (q == 0 || abs(q.get_num()) >= abs(q.get_den()))
    throw std::domain_error("verify_pade_identity: need 0 < |q| < 1");

  // E_q(t) coefficients e_k = 1/(q)_k.
  std::vector<Rat> e(static_cast<std::size_t>(order) + 1);
  e[0] = 1;
  Rat qk = q;
  for (long k = 1; k <= order; ++k) {
    e[k] = e[k - 1] / (Rat(1) - qk);
    qk *= q;
  }

  std::vector<Rat> a(static_cast<std::size_t>(n) + 1), b(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) {
    a[k] = sys.A.t_slice(k).eval(q);
    b[k] = sys.B.t_slice(k).eval(q);
  }

  const Rat lead = sys.prefactor.scalar_at(q);
  TailTerms tail = sys.tail_terms_at(q);
  Rat result;
  for (long j = 0; j <= order; ++j) {
    Rat c(0);
    for (long i = 0; i <= std::min(n, j); ++i) c += b[i] * e[j - i];
    if (j <= n) c -= a[j];
    if (j <= 2 * n) {
      if (c != 0)
        throw check_failure("pade identity: nonzero coefficient of t^" + std::to_string(j) +
                            " at n=" + std::to_string(n));
    } else {
      // coefficient of t^{2n+1+k} must equal lead * c_k
      if (c != lead * tail.next())
        throw check_failure("pade identity: tail mismatch at t^" + std::to_string(j) +
                            ", n=" + std::to_string(n));
      if (j == 2 * n + 1) result = c;
    }
  }
  return result;
}

// Same identity with q left symbolic: multiplying the t^j coefficient by
// (q)_j turns every term into an element of Z[q], since
// (q)_j/(q)_{j-i} = prod_{m=j-i+1}^{j} (1-q^m).
inline void verify_pade_identity_symbolic(const PadeSystem& sys, long order) {
  const long n = sys.n;
  if (order < 2 * n + 1) throw std::domain_error("verify_pade_identity_symbolic: order < 2n+1");
  std::vector<QPoly> a(static_cast<std::size_t>(n) + 1), b(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) {
    a[k] = sys.A.t_slice(k);
    b[k] = sys.B.t_slice(k);
  }
  for (long j = 0; j <= std::min(order, 2 * n + 1); ++j) {
    QPoly c;  // (q)_j * [t^j](B E - A)
    for (long i = 0; i <= std::min(n, j); ++i) {
      QPoly ratio = QPoly::one();  // (q)_j / (q)_{j-i}
      for (long m = j - i + 1; m <= j; ++m) {
        QPoly f = QPoly::one();
        f.add_term(m, Int(-1));
        ratio *= f;
      }
      c += b[i] * ratio;
    }
    if (j <= n) c -= a[j] * q_factorial_poly(j);
    if (j <= 2 * n) {
      if (!c.is_zero())
        throw check_failure("pade identity (symbolic): nonzero coefficient of t^" +
                            std::to_string(j) + " at n=" + std::to_string(n));
    } else {
      // (q)_{2n+1} * lead = (-1)^n q^{(3n^2+n)/2} (q)_n
      QPoly expected = q_factorial_poly(n).shifted(sys.prefactor.q_exp(),
                                                   Int(sys.prefactor.sign()));
      if (c != expected)
        throw check_failure("pade identity (symbolic): leading coefficient mismatch at n=" +
                            std::to_string(n));
    }
  }
}

// Determinant Delta_n(t) = B_n A_{n+1} - B_{n+1} A_n, which collapses to
// C_n t^{2n+1} with C_n = (q^{n+2})_{n+1} (-1)^n q^{(3n^2+n)/2} (q)_n/(q)_{2n+1}.
// The symbolic check clears (q)_{2n+1} so everything stays in Z[q,t];
// the returned C_n uses the reduced polynomial form
// (-1)^n q^{(3n^2+n)/2} (1+q^{n+1}).
struct DeterminantResult {
  bool identity_holds = false;
  QPoly C_sym;  // C_n as an element of Z[q]
  Rat C_at_q;   // C_n evaluated (only set by the rational-q overload)
};

inline DeterminantResult determinant(long n) {
  if (n < 0) throw std::domain_error("determinant: n < 0");
  PadeSystem lo = build_pade(n);
  PadeSystem hi = build_pade(n + 1);
  BiPoly delta = lo.B * hi.A - hi.B * lo.A;

  TailPrefactor pf{n};
  QPoly closed = (q_pochhammer_qpow(n + 2, n + 1) * q_factorial_poly(n))
                     .shifted(pf.q_exp(), Int(pf.sign()));
  // delta * (q)_{2n+1} == closed * t^{2n+1}, all in Z[q,t]
  BiPoly lhs = delta * BiPoly::from_qpoly(q_factorial_poly(2 * n + 1));
  BiPoly rhs = BiPoly::from_qpoly(closed, 2 * n + 1);

  DeterminantResult res;
  res.identity_holds = (lhs == rhs);
  if (!res.identity_holds)
    throw check_failure("determinant identity failed at n=" + std::to_string(n));
  res.C_sym = QPoly::divide_exact(closed, q_factorial_poly(2 * n + 1));
  return res;
}

inline DeterminantResult determinant(long n, const Rat& q) {
  DeterminantResult res = determinant(n);
  res.C_at_q = res.C_sym.eval(q);
  if (q != 0 && abs(q.get_num()) < abs(q.get_den()) && res.C_at_q == 0)
    throw check_failure("determinant constant vanished at rational q, n=" + std::to_string(n));
  return res;
}

}  // namespace qexp
