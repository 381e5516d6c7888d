#pragma once

// High-precision enclosures of the q-exponential
//
//   E_q(t) = sum_{k>=0} t^k/(q)_k = prod_{k>=0} 1/(1 - q^k t),
//
// computed by both defining formulas with rigorous tail bounds, plus the
// empirical probes built on top of them: continued-fraction convergents,
// a crude irrationality-exponent estimate, and the d^s/N approximant scan.

#include <functional>
#include <vector>

#include "qexp/interval.hpp"
#include "qexp/numeric.hpp"
#include "qexp/problem.hpp"

namespace qexp {

namespace detail {

inline void check_qt_domain(const Rat& q, const Rat& t) {
  // 0 < |q| <= 1/2 (q = 1/d, |d| >= 2) and 0 < |t| < 1
  if (q == 0 || 2 * abs(q.get_num()) > abs(q.get_den()))
    throw std::domain_error("q-exponential: need 0 < |q| <= 1/2");
  if (t == 0 || abs(t.get_num()) >= abs(t.get_den()))
    throw std::domain_error("q-exponential: need 0 < |t| < 1");
}

}  // namespace detail

// Series form. The tail past k* is bounded by 4 |t|^{k*+1}/(1-|t|), using
// 1/|(q)_k| <= 4 for |q| <= 1/2. Terms are accumulated in interval
// arithmetic (the exact rationals would grow denominators like d^(k^2/2)).
inline Enclosure q_exp_series(const Rat& q, const Rat& t, long prec) {
  detail::check_qt_domain(q, t);
  const mpfr_prec_t wp = static_cast<mpfr_prec_t>(prec + 64);
  const Rat abs_t = abs(t);
  const Rat tail_scale = 4 / (Rat(1) - abs_t);

  Enclosure sum = enc_long(1, wp);
  Enclosure term = enc_long(1, wp);  // t^k/(q)_k
  const Enclosure t_enc = enc_rat(t, wp);
  Rat abs_tk = abs_t;  // |t|^k
  Rat qk = q;          // q^k
  // absolute tail target: E is bounded below by 1/5 on the admissible
  // domain, so 2^-(prec+10) absolute keeps the relative width inside the
  // 2^-(prec-8) contract.
  Rat eps = make_rat(1, 1);
  eps /= pow_int(Int(2), static_cast<unsigned long>(prec + 10));
  for (long k = 1;; ++k) {
    term = term * t_enc / enc_rat(Rat(1) - qk, wp);
    qk *= q;
    sum = sum + term;
    Rat tail = abs_tk * abs_t * tail_scale;  // bound for sum_{j>k}
    if (tail < eps) {
      Enclosure tail_iv(Enclosure::from_rat(-tail, wp).lo(), Enclosure::from_rat(tail, wp).hi());
      return sum + tail_iv;
    }
    abs_tk *= abs_t;
  }
}

// Product form. After k* factors the remaining product lies within
// [exp(-sigma), exp(2 sigma)] where sigma = |t| |q|^{k*+1}/(1-|q|).
inline Enclosure q_exp_product(const Rat& q, const Rat& t, long prec) {
  detail::check_qt_domain(q, t);
  const mpfr_prec_t wp = static_cast<mpfr_prec_t>(prec + 64);
  const Rat abs_q = abs(q);
  const Rat abs_t = abs(t);

  Enclosure prod = enc_long(1, wp);
  Rat qk(1);
  Rat abs_qk1 = abs_q;  // |q|^{k+1}
  Rat eps = make_rat(1, 1);
  eps /= pow_int(Int(2), static_cast<unsigned long>(prec + 12));
  for (long k = 0;; ++k) {
    prod = prod / enc_rat(Rat(1) - qk * t, wp);
    Rat sigma = abs_t * abs_qk1 / (Rat(1) - abs_q);
    abs_qk1 *= abs_q;
    if (sigma < eps) {
      Enclosure s = enc_rat(sigma, wp);
      Enclosure lo_factor = (-s).exp();
      Enclosure hi_factor = (s + s).exp();
      Real lo(wp), hi(wp);
      mpfr_mul(lo.get(), prod.lo().get(), lo_factor.lo().get(), MPFR_RNDD);
      mpfr_mul(hi.get(), prod.hi().get(), hi_factor.hi().get(), MPFR_RNDU);
      return Enclosure(std::move(lo), std::move(hi));
    }
    qk *= q;
  }
}

// Final enclosure: the two formulas must agree; their intersection is the
// returned value.
inline Enclosure q_exp(const Rat& q, const Rat& t, long prec) {
  Enclosure s = q_exp_series(q, t, prec);
  Enclosure p = q_exp_product(q, t, prec);
  auto iv = Enclosure::intersect(s, p);
  if (!iv) throw check_failure("q_exp: series and product enclosures are disjoint");
  return *iv;
}

inline Enclosure q_exp(const ProblemInstance& inst, long prec) {
  return q_exp(inst.q(), inst.t(), prec);
}

struct Convergent {
  Int M;
  Int N;
  Enclosure distance;  // rigorous enclosure of |value - M/N|, bounded away from 0
};

using ValueFn = std::function<Enclosure(long prec)>;

namespace detail {

inline Int floor_rat(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

// Enclosure of |x - M/N| for exact rational interval [lo, hi].
inline std::pair<Rat, Rat> rat_distance(const Rat& lo, const Rat& hi, const Rat& p) {
  if (p < lo) return {lo - p, hi - p};
  if (p > hi) return {p - hi, p - lo};
  Rat up = hi - p;
  if (p - lo > up) up = p - lo;
  return {Rat(0), up};
}

}  // namespace detail

// Continued-fraction convergents of the enclosed real with denominators up
// to max_N. The expansion is taken on the exact (dyadic) interval
// endpoints; only partial quotients common to both endpoints are accepted,
// and precision is doubled until every requested convergent is certified
// with a distance enclosure bounded away from zero.
inline std::vector<Convergent> cf_convergents(const ValueFn& value, long initial_prec,
                                              const Int& max_N, long cap = precision_cap()) {
  for (long prec = initial_prec; prec <= cap; prec *= 2) {
    Enclosure enc = value(prec);
    const Rat vlo = enc.lo_rat();
    const Rat vhi = enc.hi_rat();

    std::vector<std::pair<Int, Int>> mn;
    Rat lo = vlo, hi = vhi;
    Int h0(1), h1(0), k0(0), k1(1);
    bool complete = false;
    while (true) {
      Int a = detail::floor_rat(lo);
      if (a != detail::floor_rat(hi)) break;  // digits diverge: need more precision
      Int h = a * h0 + h1, k = a * k0 + k1;
      if (k > max_N) {
        complete = true;
        break;
      }
      mn.emplace_back(h, k);
      h1 = h0; h0 = h; k1 = k0; k0 = k;
      Rat flo = lo - Rat(a), fhi = hi - Rat(a);
      if (flo == 0) break;  // endpoint hit: cannot certify further digits
      lo = 1 / fhi;
      hi = 1 / flo;
    }
    if (!complete) continue;

    std::vector<Convergent> out;
    bool distances_ok = true;
    const mpfr_prec_t rp = static_cast<mpfr_prec_t>(prec);
    for (const auto& [M, N] : mn) {
      auto [dlo, dhi] = detail::rat_distance(vlo, vhi, make_rat(M, N));
      if (dlo == 0) {
        distances_ok = false;  // cannot separate the convergent from the value yet
        break;
      }
      out.push_back(Convergent{M, N,
                               Enclosure(Enclosure::from_rat(dlo, rp).lo(),
                                         Enclosure::from_rat(dhi, rp).hi())});
    }
    if (!distances_ok) continue;

    // classical sanity: distances strictly decrease along the sequence
    for (std::size_t i = 1; i < out.size(); ++i)
      if (!(out[i].distance.hi() < out[i - 1].distance.lo()))
        throw check_failure("cf_convergents: distances not strictly decreasing");
    return out;
  }
  throw precision_exhausted("cf_convergents: precision cap reached");
}

// Crude irrationality-exponent estimate from consecutive convergents:
// max over k of 1 + log N_{k+1}/log N_k, skipping tiny denominators.
// Reported, never certified.
inline double empirical_exponent(const std::vector<Convergent>& convs) {
  if (convs.size() < 10)
    throw std::invalid_argument("empirical_exponent: need at least 10 convergents");
  double best = 0;
  for (std::size_t i = 0; i + 1 < convs.size(); ++i) {
    if (convs[i].N < 13) continue;
    double a = mpz_get_d(convs[i].N.get_mpz_t());
    double b = mpz_get_d(convs[i + 1].N.get_mpz_t());
    double est = 1.0 + std::log(b) / std::log(a);
    if (est > best) best = est;
  }
  if (best == 0) throw std::invalid_argument("empirical_exponent: all denominators too small");
  return best;
}

struct RestrictedPair {
  long s;
  Int N;
  Enclosure distance;  // |tau - d^s/N|
};

// For each s in [s_min, s_max], probes N in {round(d^s/tau)-1, round,
// round+1} and keeps the pairs with d^s N > 0 and |tau - d^s/N| < 1/|N|
// (certified by exact rational comparison against the tau enclosure).
inline std::vector<RestrictedPair> restricted_scan(const ProblemInstance& inst, long s_min,
                                                   long s_max, long prec) {
  if (inst.case_tag != CaseTag::RestrictedB)
    throw std::invalid_argument("restricted_scan: case (b) instance required");
  if (s_min < 1) throw std::domain_error("restricted_scan: s >= 1 required");

  Enclosure tau = q_exp(inst, prec);
  const Rat tlo = tau.lo_rat();
  const Rat thi = tau.hi_rat();
  if (!(tlo > 0)) throw check_failure("restricted_scan: tau enclosure not positive");

  std::vector<RestrictedPair> out;
  const mpfr_prec_t rp = static_cast<mpfr_prec_t>(prec);
  for (long s = s_min; s <= s_max; ++s) {
    Int ds = pow_int(Int(inst.d), static_cast<unsigned long>(s));
    // center of d^s/tau, rounded to nearest
    Rat mid = (Rat(ds) / tlo + Rat(ds) / thi) / 2;
    Int base = detail::floor_rat(mid + make_rat(1, 2));
    for (Int N = base - 1; N <= base + 1; ++N) {
      if (N == 0) continue;
      if (sgn(ds) != sgn(N)) continue;
      Rat approx = make_rat(ds, N);
      auto [dlo, dhi] = detail::rat_distance(tlo, thi, approx);
      Rat gate = make_rat(Int(1), abs(N));
      if (!(dhi < gate)) continue;  // keep only certified-close pairs
      out.push_back(RestrictedPair{s, N,
                                   Enclosure(Enclosure::from_rat(dlo, rp).lo(),
                                             Enclosure::from_rat(dhi, rp).hi())});
    }
  }
  return out;
}

}  // namespace qexp
