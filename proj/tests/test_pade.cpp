#include <catch2/catch_amalgamated.hpp>

#include "qexp/pade.hpp"

using namespace qexp;

TEST_CASE("order 0 system is trivial") {
  PadeSystem s = build_pade(0);
  CHECK(s.A == BiPoly::one());
  CHECK(s.B == BiPoly::one());
  CHECK(s.prefactor.t_exp() == 1);
  CHECK(s.prefactor.q_exp() == 0);
  TailTerms tt = s.tail_terms_at(make_rat(1, 2));
  CHECK(tt.next() == 1);  // c_0 = 1
}

TEST_CASE("order 1 system expands by hand") {
  // B_1 = (1-q^2) - t,  A_1 = (1-q^2) + q t
  PadeSystem s = build_pade(1);
  CHECK(s.B.deg_t() == 1);
  CHECK(s.A.deg_t() == 1);
  CHECK(s.B.coeff(0, 0) == 1);
  CHECK(s.B.coeff(2, 0) == -1);
  CHECK(s.B.coeff(0, 1) == -1);
  CHECK(s.A.coeff(0, 0) == 1);
  CHECK(s.A.coeff(2, 0) == -1);
  CHECK(s.A.coeff(1, 1) == 1);
  CHECK(s.A.terms().size() == 3);
  CHECK(s.B.terms().size() == 3);
}

TEST_CASE("identity: n=0 leading coefficient is 1/(1-q)") {
  PadeSystem s = build_pade(0);
  CHECK(verify_pade_identity(s, make_rat(1, 2), 8) == 2);
  CHECK(verify_pade_identity(s, make_rat(1, 3), 8) == make_rat(3, 2));
}

TEST_CASE("identity: low-order coefficients vanish and leading matches") {
  // n=2, q=1/2: verify_pade_identity throws unless t^0..t^4 vanish exactly
  PadeSystem s2 = build_pade(2);
  CHECK_NOTHROW(verify_pade_identity(s2, make_rat(1, 2), 12));
  // n=2, q=1/3: frozen from the independent expansion: q^7 (q)_2/(q)_5
  Rat lead = verify_pade_identity(s2, make_rat(1, 3), 12);
  CHECK(lead == make_rat(243, 503360));
  Rat closed = pow_rat(make_rat(1, 3), 7) * q_pochhammer(make_rat(1, 3), 2, make_rat(1, 3)) /
               q_pochhammer(make_rat(1, 3), 5, make_rat(1, 3));
  CHECK(lead == closed);
}

TEST_CASE("identity holds exactly for n <= 6 at several q") {
  for (long n = 0; n <= 6; ++n) {
    PadeSystem s = build_pade(n);
    for (const Rat& q : {make_rat(1, 2), make_rat(1, 3), make_rat(-1, 2)})
      CHECK_NOTHROW(verify_pade_identity(s, q, 2 * n + 8));
  }
}

TEST_CASE("identity rejects a corrupted system") {
  PadeSystem s = build_pade(2);
  s.A.add_term(1, 1, Int(1));
  CHECK_THROWS_AS(verify_pade_identity(s, make_rat(1, 2), 12), check_failure);
}

TEST_CASE("symbolic identity for n <= 5") {
  for (long n = 0; n <= 5; ++n)
    CHECK_NOTHROW(verify_pade_identity_symbolic(build_pade(n), 2 * n + 1));
}

TEST_CASE("determinant constant at n=0") {
  DeterminantResult det = determinant(0);
  CHECK(det.identity_holds);
  QPoly expected;  // 1 + q
  expected.add_term(0, Int(1));
  expected.add_term(1, Int(1));
  CHECK(det.C_sym == expected);
}

TEST_CASE("determinant identity symbolically for n <= 4") {
  for (long n = 0; n <= 4; ++n) {
    DeterminantResult det = determinant(n);
    CHECK(det.identity_holds);
    // reduced closed form: (-1)^n q^{(3n^2+n)/2} (1 + q^{n+1})
    QPoly expected;
    long e = n * (3 * n + 1) / 2;
    Int sgn = (n % 2 == 0) ? 1 : -1;
    expected.add_term(e, sgn);
    expected.add_term(e + n + 1, sgn);
    CHECK(det.C_sym == expected);
  }
}

TEST_CASE("determinant constant never vanishes at rational q") {
  for (long n = 0; n <= 6; ++n)
    for (const Rat& q : {make_rat(1, 2), make_rat(1, 3), make_rat(-1, 2)}) {
      DeterminantResult det = determinant(n, q);
      CHECK(det.C_at_q != 0);
    }
}

TEST_CASE("q-degree of the t^k slice of A_n(q^K t)") {
  // maximand: 3n^2/2 + n/2 - k^2/2 - k/2 + kK
  for (long n = 1; n <= 8; ++n) {
    PadeSystem s = build_pade(n);
    for (long K : {0L, 1L, n, 2 * n}) {
      BiPoly shifted = s.A.shift_t_by_qpow(K);
      for (long k = 0; k <= n; ++k) {
        long expected = (3 * n * n + n - k * k - k) / 2 + k * K;
        CHECK(shifted.t_slice(k).degree() == expected);
      }
    }
  }
}

TEST_CASE("piecewise q-degree bounds for the shifted polynomials") {
  for (long n = 1; n <= 10; ++n) {
    PadeSystem s = build_pade(n);
    for (long K = 0; K <= 2 * n; ++K) {
      BiPoly a = s.A.shift_t_by_qpow(K);
      BiPoly tb = t_pochhammer(K) * s.B.shift_t_by_qpow(K);
      long boundA = K <= n ? (K * K - K) / 2 + (3 * n * n + n) / 2 : n * n + n * K;
      long boundB = K <= n ? (K * K - K) / 2 + (3 * n * n + n) / 2
                           : (K * K - K) / 2 + (n * n - n) / 2 + n * K;
      CHECK(a.deg_q() <= boundA);
      CHECK(tb.deg_q() <= boundB);
      CHECK(tb.deg_t() == n + K);
      CHECK(a.deg_t() == n);
    }
  }
}

TEST_CASE("tail term stream matches its closed form") {
  const Rat q = make_rat(1, 3);
  for (long n : {0L, 1L, 3L}) {
    TailTerms tt = TailTerms(n, q);
    for (long k = 0; k <= 6; ++k) {
      Rat expected = q_pochhammer(pow_rat(q, n + 1), k, q) /
                     (q_pochhammer(q, k, q) * q_pochhammer(pow_rat(q, 2 * n + 2), k, q));
      CHECK(tt.next() == expected);
    }
  }
}
