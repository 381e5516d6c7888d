#pragma once

// Problem instance: q = 1/d with |d| >= 2 and t = u/v in lowest terms with
// 0 < |t| < 1, tagged with the approximation regime: general M/N or the
// restricted d^s/N shape.

#include <numeric>

#include "qexp/numeric.hpp"

namespace qexp {

enum class CaseTag { GeneralA, RestrictedB };

inline const char* case_name(CaseTag c) { return c == CaseTag::GeneralA ? "a" : "b"; }

struct ProblemInstance {
  long d = 2;
  long u = 1;
  long v = 2;
  CaseTag case_tag = CaseTag::GeneralA;

  static ProblemInstance make(long d, long u, long v, CaseTag tag) {
    if (std::abs(d) < 2) throw std::invalid_argument("instance: need |d| >= 2");
    if (v < 1) throw std::invalid_argument("instance: need v >= 1");
    if (u == 0 || std::abs(u) >= v)
      throw std::invalid_argument("instance: need 0 < |u/v| < 1");
    if (std::gcd(std::abs(u), v) != 1)
      throw std::invalid_argument("instance: need gcd(u, v) = 1");
    return ProblemInstance{d, u, v, tag};
  }

  Rat q() const { return make_rat(1, d); }
  Rat t() const { return make_rat(u, v); }
  long abs_d() const { return std::abs(d); }
};

}  // namespace qexp
