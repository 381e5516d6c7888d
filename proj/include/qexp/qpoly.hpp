#pragma once

// Sparse univariate polynomials over Z in the formal variable q.
// Exponents are machine integers (overflow-checked) and may be negative,
// so the type doubles as a Laurent polynomial when a clearing power of q
// is factored in or out. Coefficients are unbounded. No zero coefficient
// is ever stored, and all values are immutable in practice: operations
// return fresh polynomials.

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "qexp/numeric.hpp"

namespace qexp {

class QPoly {
 public:
  using Terms = std::map<long, Int>;

  QPoly() = default;

  static QPoly zero() { return QPoly(); }

  static QPoly constant(Int c) { return monomial(std::move(c), 0); }

  static QPoly one() { return constant(Int(1)); }

  static QPoly monomial(Int coeff, long exp) {
    QPoly p;
    if (coeff != 0) p.c_.emplace(exp, std::move(coeff));
    return p;
  }

  bool is_zero() const { return c_.empty(); }

  // Largest stored exponent; only defined for nonzero polynomials.
  long degree() const {
    require_nonzero("degree");
    return c_.rbegin()->first;
  }

  long low_degree() const {
    require_nonzero("low_degree");
    return c_.begin()->first;
  }

  const Terms& terms() const { return c_; }

  std::size_t term_count() const { return c_.size(); }

  Int coeff(long exp) const {
    auto it = c_.find(exp);
    return it == c_.end() ? Int(0) : it->second;
  }

  Int leading_coeff() const {
    require_nonzero("leading_coeff");
    return c_.rbegin()->second;
  }

  void add_term(long exp, const Int& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = c_.emplace(exp, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) c_.erase(it);
    }
  }

  QPoly& operator+=(const QPoly& o) {
    for (const auto& [e, v] : o.c_) add_term(e, v);
    return *this;
  }

  QPoly& operator-=(const QPoly& o) {
    for (const auto& [e, v] : o.c_) add_term(e, -v);
    return *this;
  }

  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }

  friend QPoly operator-(const QPoly& a) {
    QPoly r;
    for (const auto& [e, v] : a.c_) r.c_.emplace(e, -v);
    return r;
  }

  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    QPoly r;
    for (const auto& [ea, va] : a.c_)
      for (const auto& [eb, vb] : b.c_) r.add_term(checked_add(ea, eb), va * vb);
    return r;
  }

  QPoly& operator*=(const QPoly& o) { return *this = *this * o; }

  friend QPoly operator*(const QPoly& a, const Int& s) {
    QPoly r;
    if (s == 0) return r;
    for (const auto& [e, v] : a.c_) r.c_.emplace(e, v * s);
    return r;
  }

  // Multiply by s * q^exp.
  QPoly shifted(long exp, const Int& s = Int(1)) const {
    QPoly r;
    if (s == 0) return r;
    for (const auto& [e, v] : c_) r.c_.emplace(checked_add(e, exp), v * s);
    return r;
  }

  bool operator==(const QPoly& o) const { return c_ == o.c_; }
  bool operator!=(const QPoly& o) const { return !(*this == o); }

  Rat eval(const Rat& q) const {
    Rat acc(0);
    for (const auto& [e, v] : c_) acc += Rat(v) * pow_rat(q, e);
    return acc;
  }

  // Exact division: throws check_failure unless the remainder is zero.
  // Both operands must be ordinary polynomials (no negative exponents).
  static QPoly divide_exact(QPoly num, const QPoly& den) {
    if (den.is_zero()) throw std::domain_error("divide_exact: zero divisor");
    if (!num.is_zero() && num.low_degree() < 0) throw std::domain_error("divide_exact: Laurent input");
    if (den.low_degree() < 0) throw std::domain_error("divide_exact: Laurent divisor");
    QPoly quot;
    const long dd = den.degree();
    const Int dl = den.leading_coeff();
    while (!num.is_zero() && num.degree() >= dd) {
      const long e = checked_sub(num.degree(), dd);
      Int q_coeff;
      Int rem_div;
      mpz_tdiv_qr(q_coeff.get_mpz_t(), rem_div.get_mpz_t(),
                  num.leading_coeff().get_mpz_t(), dl.get_mpz_t());
      if (rem_div != 0) throw check_failure("divide_exact: non-exact leading coefficient");
      quot.add_term(e, q_coeff);
      num -= den.shifted(e, q_coeff);
    }
    if (!num.is_zero()) throw check_failure("divide_exact: nonzero remainder");
    return quot;
  }

  std::string str(const char* var = "q") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, v] : c_) {
      if (!first) os << (v > 0 ? " + " : " - ");
      else if (v < 0) os << "-";
      first = false;
      Int a = abs(v);
      if (a != 1 || e == 0) os << a.get_str();
      if (e != 0) {
        if (a != 1) os << "*";
        os << var;
        if (e != 1) os << "^" << e;
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
