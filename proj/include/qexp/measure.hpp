#pragma once

// Irrationality-measure engine.
//
// Linear forms q_n Phi - p_n = r_n with
//   |p_n|, |q_n| <= Q(n) = e^{a n^2 + a1 n + a2},
//   |r_n|        <= R(n) = e^{-b n^2 + b1 n + b2}
// yield, for (M, N) in the admissible set,
//   |Phi - M/N| > e^{-c3} (2|N|)^{-(1 + a/b + c2/sqrt(b log 2|N|))},
// with c1 = (b1 + sqrt(b1^2+4 b b2))/(2b), c2 = 2 a c1 + 4a + a1,
// c3 = c1 (a c1 + 4a + a1) + 4a + 2 a1 + a2.
//
// The slope gamma = K/n fixes the envelope constants. The general case
// optimises at gamma = 1 (main exponent 7/3); the restricted d^s/N case
// admits any feasible gamma < 1+sqrt(3), pushing the asymptotic exponent
// down to 2 + 1/(3+2 sqrt(3)).
//
// All envelope and certificate constants are computed in interval
// arithmetic; the certificate consumes the safe endpoint in every
// direction, so reported bounds never exceed their exact-arithmetic values.

#include <optional>
#include <string>
#include <vector>

#include "qexp/forms.hpp"
#include "qexp/interval.hpp"
#include "qexp/numeric.hpp"
#include "qexp/oracle.hpp"
#include "qexp/pade.hpp"
#include "qexp/problem.hpp"

namespace qexp {

// prod_{k>=0} (1 + 2^-k), truncated at k = 200 with the tail folded in as
// an exp bound. Approx 4.768462.
inline Enclosure prod_one_plus_half_powers(long prec) {
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(prec + 32);
  Enclosure acc = enc_long(1, p);
  Rat pw(1);
  for (long k = 0; k <= 200; ++k) {
    acc = acc * enc_rat(Rat(1) + pw, p);
    pw /= 2;
  }
  // remaining factors are between 1 and exp(sum_{k>200} 2^-k) = exp(2^-200)
  Enclosure tail_hi = enc_rat(pw * 2, p).exp();
  Real lo = acc.lo();
  Real hi(p);
  mpfr_mul(hi.get(), acc.hi().get(), tail_hi.hi().get(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi));
}

struct GrowthParams {
  CaseTag case_tag = CaseTag::GeneralA;
  Rat gamma;  // exact slope
  Enclosure a, a1, a2, b, b1, b2;
  long n0 = 1;
  long precision_bits = 0;
};

namespace detail {

// a(gamma)/log|d| and b(gamma)/log|d| as exact rationals per branch.
inline Rat a_coeff(CaseTag tag, const Rat& g) {
  if (g <= 1) return g * g / 2 + make_rat(3, 2);
  if (tag == CaseTag::GeneralA) return g * g / 2 + g + make_rat(1, 2);
  return 1 + g;
}

inline Rat b_coeff(CaseTag tag, const Rat& g) {
  if (g <= 1) return 2 * g - g * g / 2;
  if (tag == CaseTag::GeneralA) return 1 + g - g * g / 2;
  return make_rat(1, 2) + g;
}

}  // namespace detail

// a(gamma)/b(gamma); independent of d. Usable for scans and optimisation.
inline Rat exponent_ratio(CaseTag tag, const Rat& gamma) {
  if (gamma <= 0) throw std::domain_error("exponent_ratio: gamma must be positive");
  Rat b = detail::b_coeff(tag, gamma);
  if (b <= 0) throw std::domain_error("exponent_ratio: b(gamma) <= 0 (gamma out of range)");
  return detail::a_coeff(tag, gamma) / b;
}

inline GrowthParams growth_params(const ProblemInstance& inst, const Rat& gamma, long prec,
                                  std::optional<Enclosure> tau = std::nullopt) {
  if (gamma <= 0) throw std::domain_error("growth_params: gamma must be positive");
  const Rat bL = detail::b_coeff(inst.case_tag, gamma);
  if (bL <= 0)
    throw std::domain_error("growth_params: gamma outside the admissible range (b <= 0)");
  const Rat aL = detail::a_coeff(inst.case_tag, gamma);

  const mpfr_prec_t p = static_cast<mpfr_prec_t>(prec);
  const Enclosure L = enc_log_int(Int(inst.abs_d()), p);
  const Enclosure w = enc_log_int(Int(inst.v), p);

  GrowthParams gp;
  gp.case_tag = inst.case_tag;
  gp.gamma = gamma;
  gp.precision_bits = prec;
  gp.a = enc_rat(aL, p) * L;
  gp.b = enc_rat(bL, p) * L;
  // a1 = (1/2 - gamma/2) log|d| + (gamma+1) log v for gamma <= 1, else
  // (gamma+1) log v.
  Enclosure a1 = enc_rat(gamma + 1, p) * w;
  if (gamma <= 1) a1 = a1 + enc_rat(make_rat(1, 2) - gamma / 2, p) * L;
  gp.a1 = a1;
  gp.a2 = (enc_long(8, p) * prod_one_plus_half_powers(prec)).log();
  gp.b1 = enc_rat(gamma + 1, p) * w;
  gp.b2 = enc_long(8, p).log();

  gp.n0 = 1;
  if (inst.case_tag == CaseTag::RestrictedB) {
    // n0 >= (2/(1+gamma)) log(4/tau)/log|d|
    Enclosure tau_enc = tau ? *tau : q_exp(inst, prec);
    if (tau_enc.lo_rat() < 4) {
      Enclosure bound = enc_rat(make_rat(2, 1) / (1 + gamma), p) *
                        (enc_long(4, p) / tau_enc).log() / L;
      Rat upper = bound.hi_rat();
      Int c;
      mpz_cdiv_q(c.get_mpz_t(), upper.get_num().get_mpz_t(), upper.get_den().get_mpz_t());
      long cn = c.fits_slong_p() ? c.get_si() : 1;
      if (cn > gp.n0) gp.n0 = cn;
    }
  }
  return gp;
}

// Q(n) = e^{a n^2 + a1 n + a2}
inline Enclosure q_envelope(const GrowthParams& gp, long n) {
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(gp.precision_bits);
  Enclosure nn = enc_long(n, p);
  return (gp.a * nn * nn + gp.a1 * nn + gp.a2).exp();
}

// R(n) = e^{-b n^2 + b1 n + b2}
inline Enclosure r_envelope(const GrowthParams& gp, long n) {
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(gp.precision_bits);
  Enclosure nn = enc_long(n, p);
  return (-(gp.b * nn * nn) + gp.b1 * nn + gp.b2).exp();
}

struct Lemma1Constants {
  Enclosure c1, c2, c3;
};

inline Lemma1Constants lemma1_constants(const GrowthParams& gp) {
  if (!gp.b.is_positive()) throw std::domain_error("lemma1_constants: b must be positive");
  Enclosure disc = gp.b1 * gp.b1 + enc_long(4, gp.b.prec()) * gp.b * gp.b2;
  Enclosure c1 = (gp.b1 + disc.sqrt()) / (gp.b + gp.b);
  Enclosure four_a = gp.a + gp.a + gp.a + gp.a;
  Enclosure c2 = (gp.a + gp.a) * c1 + four_a + gp.a1;
  Enclosure c3 = c1 * (gp.a * c1 + four_a + gp.a1) + four_a + gp.a1 + gp.a1 + gp.a2;
  return Lemma1Constants{c1, c2, c3};
}

struct Certificate {
  ProblemInstance inst;
  CaseTag case_tag = CaseTag::GeneralA;
  Rat gamma;  // slope used
  GrowthParams params;
  Lemma1Constants consts;
  Enclosure c4;                   // explicit-constant exponent: case (a) closed form, else = c3
  Enclosure main_exponent;        // realized 1 + a/b
  std::optional<Rat> main_exponent_exact;  // 7/3 in case (a)
  Enclosure asymptotic_exponent;  // 7/3 or 2 + 1/(3+2 sqrt 3)
  Enclosure error_coefficient;    // eps(N) * sqrt(log 2|N|)
  Enclosure N0;                   // raw Lemma-1 threshold
  Int N_threshold;                // effective integer threshold
  bool threshold_exceeds_stated_domain = false;
  std::optional<Enclosure> exponent_gap;  // case (b): realized - asymptotic
  std::optional<Int> N2;                  // case (b): restricted threshold piece
  bool gamma_fallback = false;            // case (b): no feasible gamma > 1
  long precision_bits = 0;
};

namespace detail {

inline Int ceil_rat(const Rat& r) {
  Int c;
  mpz_cdiv_q(c.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return c;
}

inline Int threshold_from_N0(const Enclosure& N0) {
  Int t = ceil_rat(N0.hi_rat());
  if (t < 1) t = 1;
  return t;
}

}  // namespace detail

inline Certificate theorem1_certificate(const ProblemInstance& inst, long prec) {
  if (inst.case_tag != CaseTag::GeneralA)
    throw std::invalid_argument("theorem1_certificate: case (a) instance required");
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(prec);

  Certificate cert;
  cert.inst = inst;
  cert.case_tag = CaseTag::GeneralA;
  cert.gamma = 1;
  cert.precision_bits = prec;
  cert.params = growth_params(inst, cert.gamma, prec);
  cert.consts = lemma1_constants(cert.params);

  const Enclosure L = enc_log_int(Int(inst.abs_d()), p);
  const Enclosure w = enc_log_int(Int(inst.v), p);
  const Enclosure log4 = enc_long(4, p).log();
  const Enclosure root = (log4 * L).sqrt();

  // c4 = (14 w / 3L)(4w/3 + sqrt(log4 L)) + 8 sqrt(log4 L)
  //      + log(2^7 v^{44/3} |d|^8 prod(1+2^-k))
  Enclosure c4 = enc_rat(make_rat(14, 3), p) * w / L *
                     (enc_rat(make_rat(4, 3), p) * w + root) +
                 enc_long(8, p) * root +
                 enc_long(7, p) * enc_long(2, p).log() + enc_rat(make_rat(44, 3), p) * w +
                 enc_long(8, p) * L + prod_one_plus_half_powers(prec).log();
  cert.c4 = c4;

  // eps1(N) sqrt(log 2|N|) = (22/3 log v + 8 log|d| + 4 sqrt(log4 log|d|)) / sqrt(3/2 log|d|)
  cert.error_coefficient =
      (enc_rat(make_rat(22, 3), p) * w + enc_long(8, p) * L + enc_long(4, p) * root) /
      (enc_rat(make_rat(3, 2), p) * L).sqrt();

  cert.main_exponent = enc_long(1, p) + cert.params.a / cert.params.b;
  cert.main_exponent_exact = make_rat(7, 3);
  cert.asymptotic_exponent = enc_rat(make_rat(7, 3), p);

  // N0 = e^{b n0^2 - b1 n0 - b2}/2 with n0 = 1
  cert.N0 = (cert.params.b - cert.params.b1 - cert.params.b2).exp().mul_2si(-1);
  cert.N_threshold = detail::threshold_from_N0(cert.N0);
  cert.threshold_exceeds_stated_domain = cert.N_threshold > 1;
  return cert;
}

// Feasibility of a slope gamma > 1 in the restricted case:
//   sqrt(g^2-1) (2 + x + (4+x) g + sqrt((1+g)^2 x^2 + (1+2g)(6+T)))
//     <= (1+2g) sqrt(T),
// x = log v/log|d|, T = 2 log|N|/log|d|.
// Returns +1 (provably feasible), -1 (provably infeasible), 0 (unknown).
inline int gamma_feasible(const Enclosure& g, const Enclosure& x, const Enclosure& T) {
  const mpfr_prec_t p = g.prec();
  Enclosure one = enc_long(1, p), two = enc_long(2, p), four = enc_long(4, p),
            six = enc_long(6, p);
  Enclosure g2m1 = g * g - one;
  if (!g2m1.is_positive()) return -1;
  Enclosure inner = ((one + g) * (one + g)) * (x * x) + (one + two * g) * (six + T);
  Enclosure lhs = g2m1.sqrt() * (two + x + (four + x) * g + inner.sqrt());
  Enclosure rhs = (one + two * g) * T.sqrt();
  if (lhs.hi() <= rhs.lo()) return 1;
  if (lhs.lo() > rhs.hi()) return -1;
  return 0;
}

// N2 per the restricted threshold: log(2 N2) = max{ 2(g-1)/((g+1) log|d|)
// (log(4/tau))^2 }, together with the companion requirement |N| >= 2/tau.
inline Int restricted_N2(const Enclosure& gamma, const Enclosure& tau, long abs_d, long prec) {
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(prec);
  const Enclosure L = enc_log_int(Int(abs_d), p);
  Int n2(1);
  if (tau.lo_rat() < 4) {
    Enclosure lg = (enc_long(4, p) / tau).log();
    Enclosure one = enc_long(1, p), two = enc_long(2, p);
    Enclosure log2N2 = two * (gamma - one) / ((gamma + one) * L) * lg * lg;
    Enclosure N2e = log2N2.exp().mul_2si(-1);
    n2 = detail::ceil_rat(N2e.hi_rat());
  }
  Int n_tau = detail::ceil_rat((enc_long(2, p) / tau).hi_rat());
  if (n_tau > n2) n2 = n_tau;
  if (n2 < 1) n2 = 1;
  return n2;
}

struct RestrictedContext {
  long s = 0;
  Int N;
  Enclosure x, T, n2;
  long n_bar = 0;
  Int N2;
  bool member = false;
};

// Lemma-8 style membership of (d^s, N) in the admissible set, at slope
// gamma > 1, given a rigorous tau enclosure with |tau - d^s/N| < 1/|N| and
// d^s N > 0.
inline RestrictedContext restricted_membership(const ProblemInstance& inst,
                                               const Enclosure& gamma, long s, const Int& N,
                                               const Enclosure& tau, long prec) {
  if (inst.case_tag != CaseTag::RestrictedB)
    throw std::invalid_argument("restricted_membership: case (b) instance required");
  if (!(gamma.lo_rat() > 1))
    throw std::domain_error("restricted_membership: gamma > 1 required (n2 undefined otherwise)");
  if (s < 1 || N == 0) throw std::invalid_argument("restricted_membership: need s >= 1, N != 0");

  Int ds = pow_int(Int(inst.d), static_cast<unsigned long>(s));
  if (sgn(ds) != sgn(N))
    throw std::invalid_argument("restricted_membership: need d^s N > 0");
  {  // certify |tau - d^s/N| < 1/|N|
    Rat approx = make_rat(ds, N);
    Rat dlo = tau.lo_rat() - approx, dhi = tau.hi_rat() - approx;
    Rat dist_hi = abs(dlo) > abs(dhi) ? abs(dlo) : abs(dhi);
    if (!(dist_hi < make_rat(Int(1), abs(N))))
      throw std::invalid_argument("restricted_membership: |tau - d^s/N| < 1/|N| not certified");
  }

  const mpfr_prec_t p = static_cast<mpfr_prec_t>(prec);
  RestrictedContext ctx;
  ctx.s = s;
  ctx.N = N;
  const Enclosure L = enc_log_int(Int(inst.abs_d()), p);
  ctx.x = enc_log_int(Int(inst.v), p) / L;
  ctx.T = enc_long(2, p) * enc_int(abs(N), p).log() / L;

  Enclosure one = enc_long(1, p), two = enc_long(2, p), six = enc_long(6, p);
  Enclosure opg = one + gamma;
  Enclosure denom = one + two * gamma;
  Enclosure inner = opg * opg * ctx.x * ctx.x + denom * (six + ctx.T);
  Enclosure nbar = (opg * ctx.x + inner.sqrt()) / denom;
  Rat flo_lo = nbar.lo_rat(), flo_hi = nbar.hi_rat();
  Int f_lo, f_hi;
  mpz_fdiv_q(f_lo.get_mpz_t(), flo_lo.get_num().get_mpz_t(), flo_lo.get_den().get_mpz_t());
  mpz_fdiv_q(f_hi.get_mpz_t(), flo_hi.get_num().get_mpz_t(), flo_hi.get_den().get_mpz_t());
  if (f_lo != f_hi)
    throw precision_exhausted("restricted_membership: n_bar floor is ambiguous; raise precision");
  ctx.n_bar = f_lo.get_si();

  ctx.n2 = (ctx.T / (gamma * gamma - one)).sqrt();
  ctx.N2 = restricted_N2(gamma, tau, inst.abs_d(), prec);
  ctx.member = (abs(N) >= ctx.N2) && gamma_feasible(gamma, ctx.x, ctx.T) == 1;
  return ctx;
}

// Largest feasible gamma (rounded down) for the restricted case at a given
// |N|, by bisection over (1, 1+sqrt(3)) to tolerance 1e-9. Returns nullopt
// when not even gamma = 1 + 2^-20 is feasible.
inline std::optional<Rat> select_gamma(const ProblemInstance& inst, const Int& N, long prec) {
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(prec);
  const Enclosure L = enc_log_int(Int(inst.abs_d()), p);
  const Enclosure x = enc_log_int(Int(inst.v), p) / L;
  const Enclosure T = enc_long(2, p) * enc_int(abs(N), p).log() / L;

  Rat lo = 1 + make_rat(1, 1 << 20);
  if (gamma_feasible(enc_rat(lo, p), x, T) != 1) return std::nullopt;
  // upper bracket: 1 + sqrt(3), infeasible for every finite N
  Rat hi = make_rat(2732051, 1000000);
  Rat tol = make_rat(1, 1000000000);
  while (hi - lo > tol) {
    Rat mid = (lo + hi) / 2;
    if (gamma_feasible(enc_rat(mid, p), x, T) == 1)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

inline Certificate theorem2_certificate(const ProblemInstance& inst, const Int& N, long prec) {
  if (inst.case_tag != CaseTag::RestrictedB)
    throw std::invalid_argument("theorem2_certificate: case (b) instance required");
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(prec);
  Enclosure tau = q_exp(inst, prec);

  // validity threshold: restricted N2 at the limiting slope 1 + sqrt(3)
  Enclosure sqrt3 = enc_long(3, p).sqrt();
  Enclosure gamma_cap = enc_long(1, p) + sqrt3;
  Int N2 = restricted_N2(gamma_cap, tau, inst.abs_d(), prec);
  if (abs(N) < N2)
    throw std::domain_error("theorem2_certificate: |N| below the restricted threshold N2");

  Certificate cert;
  cert.inst = inst;
  cert.case_tag = CaseTag::RestrictedB;
  cert.precision_bits = prec;
  cert.N2 = N2;

  std::optional<Rat> gamma = select_gamma(inst, N, prec);
  if (!gamma) {
    cert.gamma_fallback = true;
    cert.gamma = 1;
  } else {
    cert.gamma = *gamma;
  }

  cert.params = growth_params(inst, cert.gamma, prec, tau);
  cert.consts = lemma1_constants(cert.params);
  cert.c4 = cert.consts.c3;
  cert.main_exponent = enc_long(1, p) + cert.params.a / cert.params.b;
  cert.asymptotic_exponent =
      enc_long(2, p) + enc_long(1, p) / (enc_long(3, p) + enc_long(2, p) * sqrt3);
  cert.exponent_gap = cert.main_exponent - cert.asymptotic_exponent;
  cert.error_coefficient = cert.consts.c2 / cert.params.b.sqrt();

  const long n0 = cert.params.n0;
  Enclosure n0e = enc_long(n0, p);
  cert.N0 = (cert.params.b * n0e * n0e - cert.params.b1 * n0e - cert.params.b2).exp().mul_2si(-1);
  Int thr = detail::threshold_from_N0(cert.N0);
  if (thr < N2) thr = N2;
  if (thr < abs(N)) thr = abs(N);
  cert.N_threshold = thr;
  return cert;
}

// Generic certificate at a caller-chosen slope: the raw Lemma-1 bound
// e^{-c3} (2|N|)^{-(1 + a/b + c2/sqrt(b log 2|N|))} without the
// theorem-level closed forms.
inline Certificate lemma1_certificate(const ProblemInstance& inst, const Rat& gamma, long prec) {
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(prec);
  Certificate cert;
  cert.inst = inst;
  cert.case_tag = inst.case_tag;
  cert.gamma = gamma;
  cert.precision_bits = prec;
  cert.params = growth_params(inst, gamma, prec);
  cert.consts = lemma1_constants(cert.params);
  cert.c4 = cert.consts.c3;
  cert.main_exponent = enc_long(1, p) + cert.params.a / cert.params.b;
  cert.asymptotic_exponent = cert.main_exponent;
  cert.error_coefficient = cert.consts.c2 / cert.params.b.sqrt();
  Enclosure n0e = enc_long(cert.params.n0, p);
  cert.N0 = (cert.params.b * n0e * n0e - cert.params.b1 * n0e - cert.params.b2).exp().mul_2si(-1);
  cert.N_threshold = detail::threshold_from_N0(cert.N0);
  cert.threshold_exceeds_stated_domain = cert.N_threshold > 1;
  return cert;
}

// Explicit certified lower bound for |Phi - M/N| (case a) or
// |Phi - d^s/N| (case b) at a given |N| >= threshold; the caller consumes
// the lower endpoint as the safe value.
inline Enclosure lower_bound_at(const Certificate& cert, const Int& N) {
  if (abs(N) < cert.N_threshold)
    throw std::domain_error("lower_bound_at: |N| below the certificate threshold");
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(cert.precision_bits);
  Enclosure log2N = enc_int(2 * abs(N), p).log();
  Enclosure exponent =
      cert.main_exponent_exact
          ? enc_rat(*cert.main_exponent_exact, p) + cert.error_coefficient / log2N.sqrt()
          : cert.main_exponent + cert.consts.c2 / (cert.params.b * log2N).sqrt();
  return (-(cert.c4) - exponent * log2N).exp();
}

// Envelope audit: exact |p|, |q| and the rigorous |r| enclosure of every
// form with K = floor(gamma n), n0 <= n <= n_max, checked against both the
// family envelopes Q(n), R(n) and the per-(n,K) bounds.
struct EnvelopeItem {
  long n = 0, K = 0;
  bool ok = true;
  double margin_Q_bits = 0;  // log2(envelope/actual), negative = violation
  double margin_R_bits = 0;
  double margin_Q1_bits = 0;
  double margin_R7_bits = 0;
};

struct EnvelopeReport {
  bool ok = true;
  long n_from = 1, n_to = 0;
  std::vector<EnvelopeItem> items;
};

namespace detail {

inline double log2_ratio(const Real& envelope, const Rat& actual) {
  // log2(envelope/actual); actual may be 0 (margin +inf -> large sentinel)
  if (actual == 0) return 1e9;
  double e = mpfr_get_d(envelope.get(), MPFR_RNDN);
  double a = mpq_get_d(actual.get_mpq_t());
  if (e <= 0 || a <= 0) return -1e9;
  return std::log2(e) - std::log2(a);
}

}  // namespace detail

inline EnvelopeReport envelope_audit(const ProblemInstance& inst, const GrowthParams& gp,
                                     long n_max, long prec) {
  EnvelopeReport rep;
  rep.n_from = gp.n0;
  rep.n_to = n_max;
  for (long n = gp.n0; n <= n_max; ++n) {
    // K = floor(gamma n), exact
    Rat gn = gp.gamma * n;
    Int kf;
    mpz_fdiv_q(kf.get_mpz_t(), gn.get_num().get_mpz_t(), gn.get_den().get_mpz_t());
    long K = kf.get_si();
    std::optional<long> s;
    if (inst.case_tag == CaseTag::RestrictedB && K > n) {
      long thr = restricted_s_threshold(n, K);
      s = thr > 1 ? thr : 1;
    }
    PadeSystem sys = build_pade(n);
    LinearForm f = numeric_form(inst, sys, K, s, prec);
    DeltaExponents dex = delta_exponent(n, K, inst.case_tag, s);

    EnvelopeItem item;
    item.n = n;
    item.K = K;
    const Rat absp = abs(f.p), absq = abs(f.q_coef);
    const Rat maxpq = absp > absq ? absp : absq;

    Enclosure Q = q_envelope(gp, n);
    Enclosure R = r_envelope(gp, n);
    Rat Q1 = lemma6_bound(dex, inst);
    Enclosure R7 = lemma7_bound(dex, inst, prec);
    Enclosure abs_r = f.r.abs();

    bool q_ok = mpfr_cmp_q(Q.lo().get(), maxpq.get_mpq_t()) >= 0;
    bool r_ok = abs_r.hi().cmp(R.lo()) <= 0;
    bool q1_ok = maxpq <= Q1;
    bool r7_ok = abs_r.hi().cmp(R7.lo()) <= 0;
    item.ok = q_ok && r_ok && q1_ok && r7_ok;
    item.margin_Q_bits = detail::log2_ratio(Q.lo(), maxpq);
    item.margin_R_bits = detail::log2_ratio(R.lo(), abs_r.hi().to_rat());
    item.margin_Q1_bits = detail::log2_ratio(enc_rat(Q1, 64).lo(), maxpq);
    item.margin_R7_bits = detail::log2_ratio(R7.lo(), abs_r.hi().to_rat());
    if (!item.ok) rep.ok = false;
    rep.items.push_back(item);
  }
  return rep;
}

}  // namespace qexp
