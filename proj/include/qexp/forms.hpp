#pragma once

// Accelerated numerical linear forms.
//
// Applying the q-difference equation E_q(qt) = (1-t) E_q(t) K times to the
// Pade identity gives
//
//   (t)_K B_n(q^K t) E_q(t) - A_n(q^K t) = S_n(q^K t),
//
// and with den = v^{n+K} |d|^{delta_{n,K}} (the denominator bound, used as
// the clearing multiplier so certificate constants are reproducible):
//
//   p_{n,K} = den A_n(q^K t),  q_{n,K} = den (t)_K B_n(q^K t),
//   r_{n,K} = q_{n,K} E_q(t) - p_{n,K} = den S_n(q^K t).
//
// The remainder is enclosed by both routes independently; the enclosures
// must intersect.

#include <optional>
#include <utility>

#include "qexp/interval.hpp"
#include "qexp/numeric.hpp"
#include "qexp/oracle.hpp"
#include "qexp/pade.hpp"
#include "qexp/problem.hpp"
#include "qexp/qseries.hpp"

namespace qexp {

struct ShiftedSystem {
  long n = 0;
  long K = 0;
  BiPoly A;   // A_n(q^K t)
  BiPoly tB;  // (t)_K B_n(q^K t)
};

inline ShiftedSystem shift_accelerate(const PadeSystem& sys, long K) {
  if (K < 0) throw std::domain_error("shift_accelerate: K < 0");
  ShiftedSystem out;
  out.n = sys.n;
  out.K = K;
  out.A = sys.A.shift_t_by_qpow(K);
  out.tB = t_pochhammer(K) * sys.B.shift_t_by_qpow(K);
  return out;
}

// delta_{n,K} and omega_{n,K} exponents. omega is carried in split form
//   omega = omega2_int/2 - (n+K) * log(v)/log|d|
// so the remainder bound 8 |d|^{-omega} = 8 v^{n+K} |d|^{-omega2_int/2}
// can be evaluated without real logarithms of v.
struct DeltaExponents {
  long n = 0;
  long K = 0;
  CaseTag case_tag = CaseTag::GeneralA;
  bool high_branch = false;  // K > n
  long delta = 0;
  long omega2_int = 0;   // 2 * integer part of omega
  long omega_v_coeff = 0;  // n + K
};

// Smallest s admissible in the restricted case for K > n.
inline long restricted_s_threshold(long n, long K) {
  return checked_sub(checked_mul(K, K - 1) / 2, checked_mul(n, n + 1) / 2);
}

inline DeltaExponents delta_exponent(long n, long K, CaseTag tag,
                                     std::optional<long> s = std::nullopt) {
  if (n < 1 || K < 0) throw std::domain_error("delta_exponent: need n >= 1, K >= 0");
  DeltaExponents d;
  d.n = n;
  d.K = K;
  d.case_tag = tag;
  d.high_branch = K > n;
  d.omega_v_coeff = checked_add(n, K);
  const long kk = checked_mul(K, K - 1) / 2;       // (K^2-K)/2
  const long n3 = checked_mul(n, checked_add(checked_mul(3, n), 1)) / 2;  // (3n^2+n)/2
  if (!d.high_branch) {
    d.delta = checked_add(kk, n3);
    d.omega2_int = checked_sub(checked_mul(4, checked_mul(n, K)), checked_mul(K, K));
    return d;
  }
  if (tag == CaseTag::GeneralA) {
    d.delta = checked_add(checked_add(kk, checked_mul(n, n - 1) / 2), checked_mul(n, K));
    d.omega2_int = checked_sub(
        checked_add(checked_mul(2, checked_mul(n, n)), checked_mul(2, checked_mul(n, K))),
        checked_mul(K, K));
  } else {
    if (s && *s < restricted_s_threshold(n, K))
      throw std::domain_error("delta_exponent: restricted case needs s >= K(K-1)/2 - n(n+1)/2");
    d.delta = checked_add(checked_mul(n, n), checked_mul(n, K));
    d.omega2_int = checked_add(checked_mul(n, n), checked_mul(2, checked_mul(n, K)));
  }
  return d;
}

// v^{n+K} |d|^{delta}
inline Int denominator_scaler(const DeltaExponents& dex, const ProblemInstance& inst) {
  if (dex.delta < 0) throw std::domain_error("denominator_scaler: negative delta");
  return pow_int(Int(inst.v), static_cast<unsigned long>(dex.omega_v_coeff)) *
         pow_int(Int(inst.abs_d()), static_cast<unsigned long>(dex.delta));
}

// Remainder envelope R(n,K) = 8 |d|^{-omega} = 8 v^{n+K} |d|^{-omega2_int/2}.
inline Enclosure lemma7_bound(const DeltaExponents& dex, const ProblemInstance& inst, long prec) {
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(prec);
  Int lead = 8 * pow_int(Int(inst.v), static_cast<unsigned long>(dex.omega_v_coeff));
  long w2 = dex.omega2_int;
  long fl = (w2 >= 0) ? w2 / 2 : -((-w2 + 1) / 2);  // floor(w2/2)
  long rem = w2 - 2 * fl;                           // 0 or 1
  Enclosure e = enc_int(lead, p) * enc_rat(pow_rat(Rat(inst.abs_d()), -fl), p);
  if (rem != 0) e = e / enc_long(inst.abs_d(), p).sqrt();
  return e;
}

// Polynomial-term envelope Q_1(n,K) = 8 max{1, |(t)_K|} den; exact rational.
// ((t)_K is positive on the admissible domain, so the absolute value is a
// conservative reading of the same bound.)
inline Rat lemma6_bound(const DeltaExponents& dex, const ProblemInstance& inst) {
  Rat tk = abs(q_pochhammer(inst.t(), dex.K, inst.q()));
  if (tk < 1) tk = 1;
  return 8 * tk * Rat(denominator_scaler(dex, inst));
}

struct LinearForm {
  long n = 0;
  long K = 0;
  CaseTag case_tag = CaseTag::GeneralA;
  Int scaler;   // v^{n+K} |d|^{delta}
  Rat p;        // exact; integer in case (a)
  Rat q_coef;   // exact; integer in case (a)
  Enclosure r;  // rigorous remainder enclosure
};

// Enclosure of S_n(q^K t) by prefactor + tail summation with a geometric
// tail bound. Terms are generated through the exact recurrence
//   w_{k+1} = w_k * z * (1-q^{n+1+k}) / ((1-q^{k+1})(1-q^{2n+2+k})),
// z = q^K t, and |tail coefficients| <= 32 uniformly for |q| <= 1/2.
inline Enclosure eval_shifted_tail(const PadeSystem& sys, long K, const Rat& q, const Rat& t,
                                   long prec) {
  const mpfr_prec_t wp = static_cast<mpfr_prec_t>(prec + 64);
  const long n = sys.n;
  const Rat z = pow_rat(q, K) * t;
  const Rat abs_z = abs(z);
  if (!(abs_z < 1)) throw std::domain_error("eval_shifted_tail: need |q^K t| < 1");

  Rat eps = make_rat(1, 1);
  eps /= pow_int(Int(2), static_cast<unsigned long>(prec + 8));
  const Rat tail_scale = 32 / (Rat(1) - abs_z);

  Enclosure sum = enc_long(1, wp);   // k = 0 term
  Enclosure w = enc_long(1, wp);     // c_k z^k
  const Enclosure z_enc = enc_rat(z, wp);
  Rat q_np1 = pow_rat(q, n + 1);     // q^{n+1+k}
  Rat q_1 = q;                       // q^{k+1}
  Rat q_2np2 = pow_rat(q, 2 * n + 2);  // q^{2n+2+k}
  Rat abs_zk1 = abs_z;               // |z|^{k+1}
  for (long k = 0;; ++k) {
    Rat tail = abs_zk1 * tail_scale;
    if (tail < eps) {
      Enclosure tail_iv(Enclosure::from_rat(-tail, wp).lo(), Enclosure::from_rat(tail, wp).hi());
      sum = sum + tail_iv;
      break;
    }
    w = w * z_enc * enc_rat(Rat(1) - q_np1, wp) /
        enc_rat((Rat(1) - q_1) * (Rat(1) - q_2np2), wp);
    sum = sum + w;
    q_np1 *= q;
    q_1 *= q;
    q_2np2 *= q;
    abs_zk1 *= abs_z;
  }
  // prefactor: sign * z^{2n+1} * q^{(3n^2+n)/2} (q)_n/(q)_{2n+1}
  Rat pre = sys.prefactor.scalar_at(q) * pow_rat(z, 2 * n + 1);
  return enc_rat(pre, wp) * sum;
}

// Relative-width contract for remainder enclosures: width <= 2^-margin |mid|
// with margin = prec/2.
inline long remainder_margin(long prec) { return prec / 2; }

inline LinearForm numeric_form(const ProblemInstance& inst, const PadeSystem& sys, long K,
                               std::optional<long> s, long prec) {
  const long n = sys.n;
  DeltaExponents dex = delta_exponent(n, K, inst.case_tag, s);
  ShiftedSystem sh = shift_accelerate(sys, K);
  const Rat q = inst.q();
  const Rat t = inst.t();

  LinearForm f;
  f.n = n;
  f.K = K;
  f.case_tag = inst.case_tag;
  f.scaler = denominator_scaler(dex, inst);
  f.p = Rat(f.scaler) * sh.A.eval(q, t);
  f.q_coef = Rat(f.scaler) * sh.tB.eval(q, t);
  if (inst.case_tag == CaseTag::GeneralA && (!is_integer(f.p) || !is_integer(f.q_coef)))
    throw check_failure("numeric_form: denominator lemma violated in case (a) at n=" +
                        std::to_string(n) + " K=" + std::to_string(K));

  const long margin = remainder_margin(prec);
  const long cap = precision_cap();
  for (long wp = prec;; wp *= 2) {
    Enclosure e = q_exp(q, t, wp);
    Enclosure route1 = enc_rat(f.q_coef, static_cast<mpfr_prec_t>(wp + 64)) * e -
                       enc_rat(f.p, static_cast<mpfr_prec_t>(wp + 64));
    Enclosure route2 = enc_int(f.scaler, static_cast<mpfr_prec_t>(wp + 64)) *
                       eval_shifted_tail(sys, K, q, t, wp);
    auto iv = Enclosure::intersect(route1, route2);
    if (!iv)
      throw check_failure("numeric_form: remainder enclosures are disjoint at n=" +
                          std::to_string(n) + " K=" + std::to_string(K));
    if (iv->rel_width_within(margin)) {
      f.r = *iv;
      return f;
    }
    if (wp * 2 > cap)
      throw precision_exhausted("numeric_form: precision cap reached at n=" + std::to_string(n) +
                                " K=" + std::to_string(K));
  }
}

inline LinearForm numeric_form(const ProblemInstance& inst, long n, long K,
                               std::optional<long> s, long prec) {
  return numeric_form(inst, build_pade(n), K, s, prec);
}

// D_{n,K} = p N - q_coef M, the integer that drives the lower-bound engine.
struct IntegerForm {
  Rat value;           // exact
  bool is_integer = false;
  Int integer_value;   // set when is_integer
  bool is_zero = false;
  Enclosure enclosure;
};

inline IntegerForm integer_form_Dn(const LinearForm& form, const Rat& M, const Int& N,
                                   bool integrality_required, long prec = 128) {
  IntegerForm out{Rat(0), false, Int(0), false,
                  enc_long(0, static_cast<mpfr_prec_t>(prec))};
  out.value = form.p * Rat(N) - form.q_coef * M;
  out.is_integer = is_integer(out.value);
  out.is_zero = (out.value == 0);
  if (out.is_integer) out.integer_value = out.value.get_num();
  if (integrality_required && !out.is_integer)
    throw check_failure("integer_form_Dn: D is not an integer where integrality is asserted");
  out.enclosure = enc_rat(out.value, static_cast<mpfr_prec_t>(prec));
  return out;
}

}  // namespace qexp
