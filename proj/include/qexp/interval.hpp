#pragma once

// Directed-rounding interval arithmetic over MPFR. Every operation rounds
// the lower endpoint down and the upper endpoint up, so an Enclosure always
// contains the exact real number it tracks. This file is the only place in
// the library that touches raw mpfr_t.

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>

#include "qexp/numeric.hpp"

namespace qexp {

// RAII wrapper around one mpfr_t.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_nan(v_);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  int sign() const { return mpfr_sgn(v_); }
  int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
  bool operator<(const Real& o) const { return cmp(o) < 0; }
  bool operator<=(const Real& o) const { return cmp(o) <= 0; }
  bool operator>(const Real& o) const { return cmp(o) > 0; }
  bool operator>=(const Real& o) const { return cmp(o) >= 0; }

  bool is_number() const { return mpfr_number_p(v_) != 0; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // Exact value as a (dyadic) rational. Requires a finite value.
  Rat to_rat() const {
    if (!is_number()) throw std::domain_error("Real::to_rat: not a finite number");
    if (mpfr_zero_p(v_)) return Rat(0);
    Int m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    if (e >= 0) return Rat(m * pow_int(Int(2), static_cast<unsigned long>(e)));
    return make_rat(m, pow_int(Int(2), static_cast<unsigned long>(-e)));
  }

  // Decimal scientific string with an explicit rounding direction.
  std::string str(int digits, mpfr_rnd_t rnd) const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.*R*e", digits, rnd, v_) < 0)
      throw std::runtime_error("mpfr_asprintf failed");
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

 private:
  mpfr_t v_;
};

// Closed interval [lo, hi] guaranteed to contain the tracked real value.
class Enclosure {
 public:
  // Default state is the exact point [0, 0]; aggregate members are expected
  // to be overwritten before use.
  Enclosure() : lo_(8), hi_(8) {
    mpfr_set_ui(lo_.get(), 0, MPFR_RNDD);
    mpfr_set_ui(hi_.get(), 0, MPFR_RNDU);
  }

  Enclosure(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (!lo_.is_number() || !hi_.is_number() || lo_.cmp(hi_) > 0)
      throw check_failure("Enclosure: invalid endpoints");
  }

  static Enclosure from_rat(const Rat& r, mpfr_prec_t prec) {
    Real lo(prec), hi(prec);
    mpfr_set_q(lo.get(), r.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi.get(), r.get_mpq_t(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
  }

  static Enclosure from_int(const Int& z, mpfr_prec_t prec) {
    Real lo(prec), hi(prec);
    mpfr_set_z(lo.get(), z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi.get(), z.get_mpz_t(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
  }

  static Enclosure from_long(long v, mpfr_prec_t prec) { return from_int(Int(v), prec); }

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  Rat lo_rat() const { return lo_.to_rat(); }
  Rat hi_rat() const { return hi_.to_rat(); }

  mpfr_prec_t prec() const { return std::max(lo_.prec(), hi_.prec()); }

  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool is_positive() const { return lo_.sign() > 0; }
  bool is_negative() const { return hi_.sign() < 0; }

  bool contains(const Rat& r) const {
    return mpfr_cmp_q(lo_.get(), r.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), r.get_mpq_t()) >= 0;
  }

  friend Enclosure operator+(const Enclosure& a, const Enclosure& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Real lo(p), hi(p);
    mpfr_add(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
  }

  friend Enclosure operator-(const Enclosure& a, const Enclosure& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Real lo(p), hi(p);
    mpfr_sub(lo.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(hi.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
  }

  friend Enclosure operator-(const Enclosure& a) {
    Real lo(a.hi_.prec()), hi(a.lo_.prec());
    mpfr_neg(lo.get(), a.hi_.get(), MPFR_RNDD);
    mpfr_neg(hi.get(), a.lo_.get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
  }

  friend Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Real lo(p), hi(p), tmp(p);
    bool first = true;
    for (const Real* x : {&a.lo_, &a.hi_})
      for (const Real* y : {&b.lo_, &b.hi_}) {
        mpfr_mul(tmp.get(), x->get(), y->get(), MPFR_RNDD);
        if (first || tmp.cmp(lo) < 0) mpfr_set(lo.get(), tmp.get(), MPFR_RNDD);
        mpfr_mul(tmp.get(), x->get(), y->get(), MPFR_RNDU);
        if (first || tmp.cmp(hi) > 0) mpfr_set(hi.get(), tmp.get(), MPFR_RNDU);
        first = false;
      }
    return Enclosure(std::move(lo), std::move(hi));
  }

  friend Enclosure operator/(const Enclosure& a, const Enclosure& b) {
    if (b.contains_zero()) throw std::domain_error("Enclosure division by interval containing 0");
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Real lo(p), hi(p), tmp(p);
    bool first = true;
    for (const Real* x : {&a.lo_, &a.hi_})
      for (const Real* y : {&b.lo_, &b.hi_}) {
        mpfr_div(tmp.get(), x->get(), y->get(), MPFR_RNDD);
        if (first || tmp.cmp(lo) < 0) mpfr_set(lo.get(), tmp.get(), MPFR_RNDD);
        mpfr_div(tmp.get(), x->get(), y->get(), MPFR_RNDU);
        if (first || tmp.cmp(hi) > 0) mpfr_set(hi.get(), tmp.get(), MPFR_RNDU);
        first = false;
      }
    return Enclosure(std::move(lo), std::move(hi));
  }

  Enclosure abs() const {
    mpfr_prec_t p = prec();
    Real lo(p), hi(p);
    if (lo_.sign() >= 0) return *this;
    if (hi_.sign() <= 0) return -*this;
    // straddles zero
    mpfr_set_ui(lo.get(), 0, MPFR_RNDD);
    mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
    if (mpfr_cmp(hi.get(), hi_.get()) < 0) mpfr_set(hi.get(), hi_.get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
  }

  Enclosure sqrt() const {
    if (lo_.sign() < 0) throw std::domain_error("Enclosure::sqrt of negative interval");
    mpfr_prec_t p = prec();
    Real lo(p), hi(p);
    mpfr_sqrt(lo.get(), lo_.get(), MPFR_RNDD);
    mpfr_sqrt(hi.get(), hi_.get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
  }

  Enclosure exp() const {
    mpfr_prec_t p = prec();
    Real lo(p), hi(p);
    mpfr_exp(lo.get(), lo_.get(), MPFR_RNDD);
    mpfr_exp(hi.get(), hi_.get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
  }

  Enclosure log() const {
    if (lo_.sign() <= 0) throw std::domain_error("Enclosure::log of non-positive interval");
    mpfr_prec_t p = prec();
    Real lo(p), hi(p);
    mpfr_log(lo.get(), lo_.get(), MPFR_RNDD);
    mpfr_log(hi.get(), hi_.get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
  }

  // base^e for a positive base, via exp(e log base).
  static Enclosure pow(const Enclosure& base, const Enclosure& e) {
    return (e * base.log()).exp();
  }

  // Exact scaling by 2^k.
  Enclosure mul_2si(long k) const {
    Real lo(lo_.prec()), hi(hi_.prec());
    mpfr_mul_2si(lo.get(), lo_.get(), k, MPFR_RNDD);
    mpfr_mul_2si(hi.get(), hi_.get(), k, MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
  }

  static std::optional<Enclosure> intersect(const Enclosure& a, const Enclosure& b) {
    const Real& lo = a.lo_.cmp(b.lo_) >= 0 ? a.lo_ : b.lo_;
    const Real& hi = a.hi_.cmp(b.hi_) <= 0 ? a.hi_ : b.hi_;
    if (lo.cmp(hi) > 0) return std::nullopt;
    return Enclosure(lo, hi);
  }

  static Enclosure hull(const Enclosure& a, const Enclosure& b) {
    const Real& lo = a.lo_.cmp(b.lo_) <= 0 ? a.lo_ : b.lo_;
    const Real& hi = a.hi_.cmp(b.hi_) >= 0 ? a.hi_ : b.hi_;
    return Enclosure(lo, hi);
  }

  Real width() const {
    Real w(prec());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return w;
  }

  Real midpoint() const {
    Real m(prec());
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m;
  }

  // width <= 2^-bits * |midpoint| ?
  bool rel_width_within(long bits) const {
    Real w = width();
    Real m = midpoint();
    mpfr_abs(m.get(), m.get(), MPFR_RNDD);
    mpfr_mul_2si(m.get(), m.get(), -bits, MPFR_RNDD);
    return w.cmp(m) <= 0;
  }

  std::string str(int digits = 20) const {
    return "[" + lo_.str(digits, MPFR_RNDD) + ", " + hi_.str(digits, MPFR_RNDU) + "]";
  }

 private:
  Real lo_, hi_;
};

// Wrappers with an explicit result precision, for expressions seeded from
// exact values.
inline Enclosure enc_rat(const Rat& r, mpfr_prec_t p) { return Enclosure::from_rat(r, p); }
inline Enclosure enc_int(const Int& z, mpfr_prec_t p) { return Enclosure::from_int(z, p); }
inline Enclosure enc_long(long v, mpfr_prec_t p) { return Enclosure::from_long(v, p); }

// log of a positive integer.
inline Enclosure enc_log_int(const Int& z, mpfr_prec_t p) {
  if (z <= 0) throw std::domain_error("enc_log_int: non-positive argument");
  return enc_int(z, p).log();
}

// Escalation cap for automatic precision doubling; overridable through the
// QEXP_PRECISION_CAP environment variable.
inline long precision_cap() {
  if (const char* env = std::getenv("QEXP_PRECISION_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 16) return v;
  }
  return 8192;
}

}  // namespace qexp
