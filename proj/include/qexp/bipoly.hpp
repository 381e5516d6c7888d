#pragma once

// Sparse bivariate polynomials over Z in (q, t). Storage maps
// (q-exponent, t-exponent) pairs to nonzero coefficients; q-exponents may
// go negative (Laurent in q), t-exponents stay non-negative.

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "qexp/numeric.hpp"
#include "qexp/qpoly.hpp"

namespace qexp {

class BiPoly {
 public:
  using Key = std::pair<long, long>;  // (q_exp, t_exp)
  using Terms = std::map<Key, Int>;

  BiPoly() = default;

  static BiPoly zero() { return BiPoly(); }

  static BiPoly one() { return monomial(Int(1), 0, 0); }

  static BiPoly monomial(Int coeff, long q_exp, long t_exp) {
    BiPoly p;
    if (coeff != 0) p.c_.emplace(Key{q_exp, t_exp}, std::move(coeff));
    return p;
  }

  // Embed f(q) * t^t_exp.
  static BiPoly from_qpoly(const QPoly& f, long t_exp = 0) {
    BiPoly p;
    for (const auto& [e, v] : f.terms()) p.c_.emplace(Key{e, t_exp}, v);
    return p;
  }

  bool is_zero() const { return c_.empty(); }

  const Terms& terms() const { return c_; }

  Int coeff(long q_exp, long t_exp) const {
    auto it = c_.find(Key{q_exp, t_exp});
    return it == c_.end() ? Int(0) : it->second;
  }

  long deg_q() const {
    require_nonzero("deg_q");
    long d = c_.begin()->first.first;
    for (const auto& [k, v] : c_)
      if (k.first > d) d = k.first;
    return d;
  }

  long deg_t() const {
    require_nonzero("deg_t");
    long d = c_.begin()->first.second;
    for (const auto& [k, v] : c_)
      if (k.second > d) d = k.second;
    return d;
  }

  // Coefficient of t^t_exp as a polynomial in q.
  QPoly t_slice(long t_exp) const {
    QPoly s;
    for (const auto& [k, v] : c_)
      if (k.second == t_exp) s.add_term(k.first, v);
    return s;
  }

  void add_term(long q_exp, long t_exp, const Int& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = c_.emplace(Key{q_exp, t_exp}, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) c_.erase(it);
    }
  }

  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [k, v] : o.c_) add_term(k.first, k.second, v);
    return *this;
  }

  BiPoly& operator-=(const BiPoly& o) {
    for (const auto& [k, v] : o.c_) add_term(k.first, k.second, -v);
    return *this;
  }

  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }

  friend BiPoly operator-(const BiPoly& a) {
    BiPoly r;
    for (const auto& [k, v] : a.c_) r.c_.emplace(k, -v);
    return r;
  }

  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ka, va] : a.c_)
      for (const auto& [kb, vb] : b.c_)
        r.add_term(checked_add(ka.first, kb.first), checked_add(ka.second, kb.second), va * vb);
    return r;
  }

  BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }

  friend BiPoly operator*(const BiPoly& a, const Int& s) {
    BiPoly r;
    if (s == 0) return r;
    for (const auto& [k, v] : a.c_) r.c_.emplace(k, v * s);
    return r;
  }

  bool operator==(const BiPoly& o) const { return c_ == o.c_; }
  bool operator!=(const BiPoly& o) const { return !(*this == o); }

  // Substitute t -> q^K t; exact, maps (i, j) to (i + K*j, j).
  BiPoly shift_t_by_qpow(long K) const {
    BiPoly r;
    for (const auto& [k, v] : c_)
      r.c_.emplace(Key{checked_add(k.first, checked_mul(K, k.second)), k.second}, v);
    return r;
  }

  Rat eval(const Rat& q, const Rat& t) const {
    // Group by t-degree so each q-power is reused along a slice.
    Rat acc(0);
    for (const auto& [k, v] : c_) acc += Rat(v) * pow_rat(q, k.first) * pow_rat(t, k.second);
    return acc;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : c_) {
      if (!first) os << (v > 0 ? " + " : " - ");
      else if (v < 0) os << "-";
      first = false;
      Int a = abs(v);
      bool printed = false;
      if (a != 1 || (k.first == 0 && k.second == 0)) {
        os << a.get_str();
        printed = true;
      }
      if (k.first != 0) {
        if (printed) os << "*";
        os << "q";
        if (k.first != 1) os << "^" << k.first;
        printed = true;
      }
      if (k.second != 0) {
        if (printed) os << "*";
        os << "t";
        if (k.second != 1) os << "^" << k.second;
      }
    }
    return os.str();
  }

 private:
  void require_nonzero(const char* what) const {
    if (c_.empty()) throw std::domain_error(std::string(what) + ": zero polynomial");
  }

  Terms c_;
};

}  // namespace qexp
