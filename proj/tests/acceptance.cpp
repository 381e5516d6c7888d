// Acceptance suite: one check per release criterion, each printing a
// [PASS]/[FAIL] line with its runtime. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qexp/certificate_io.hpp"
#include "qexp/cli.hpp"
#include "qexp/forms.hpp"
#include "qexp/measure.hpp"
#include "qexp/oracle.hpp"
#include "qexp/pade.hpp"

using namespace qexp;

namespace {

int g_failures = 0;

void criterion(int id, const std::string& what, const std::function<bool(std::string&)>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string note;
  bool ok = false;
  try {
    ok = body(note);
  } catch (const std::exception& e) {
    note = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", id, what.c_str(),
              secs, note.empty() ? "" : " -- ", note.c_str());
  if (!ok) ++g_failures;
}

bool pade_identity(std::string& note) {
  long checked = 0;
  for (long n = 0; n <= 10; ++n) {
    PadeSystem sys = build_pade(n);
    for (const Rat& q : {make_rat(1, 2), make_rat(1, 3), make_rat(-1, 2)}) {
      verify_pade_identity(sys, q, 2 * n + 8);  // throws on any violation
      ++checked;
    }
  }
  note = std::to_string(checked) + " (n, q) cells, exact";
  return true;
}

bool determinant_identity(std::string& note) {
  for (long n = 0; n <= 8; ++n) {
    for (const Rat& q : {make_rat(1, 2), make_rat(1, 3), make_rat(-1, 2)}) {
      DeterminantResult det = determinant(n, q);  // symbolic equality + closed form
      if (!det.identity_holds || det.C_at_q == 0) return false;
    }
  }
  note = "polynomial equality and nonvanishing for n <= 8";
  return true;
}

bool denominator_audit(std::string& note) {
  long cells = 0, dcells = 0;
  const Int N_probe(12345);
  for (long d : {2L, 3L, -2L}) {
    for (long v : {2L, 3L}) {
      ProblemInstance a = ProblemInstance::make(d, 1, v, CaseTag::GeneralA);
      ProblemInstance b = ProblemInstance::make(d, 1, v, CaseTag::RestrictedB);
      const Rat q = a.q(), t = a.t();
      for (long n = 1; n <= 8; ++n) {
        PadeSystem sys = build_pade(n);
        for (long K = 0; K <= 12; ++K) {
          ShiftedSystem sh = shift_accelerate(sys, K);
          // (a): the true denominators divide v^{n+K} |d|^{delta}
          DeltaExponents dex = delta_exponent(n, K, CaseTag::GeneralA);
          Int scale = denominator_scaler(dex, a);
          if (scale % denominator(sh.A.eval(q, t)) != 0) return false;
          if (scale % denominator(sh.tB.eval(q, t)) != 0) return false;
          ++cells;
          // (b): D_{n,K} integral whenever the s-condition holds
          long s = K > n ? std::max(1L, restricted_s_threshold(n, K)) : 1;
          DeltaExponents dexb = delta_exponent(n, K, CaseTag::RestrictedB, s);
          Int scale_b = denominator_scaler(dexb, b);
          Rat p = Rat(scale_b) * sh.A.eval(q, t);
          Rat qc = Rat(scale_b) * sh.tB.eval(q, t);
          Rat M = pow_rat(Rat(d), s);
          Rat D = p * Rat(N_probe) - qc * M;
          if (!is_integer(D)) return false;
          ++dcells;
        }
      }
    }
  }
  note = std::to_string(cells) + " case-(a) cells, " + std::to_string(dcells) +
         " case-(b) integrality cells, exact";
  return true;
}

bool envelope_bounds(std::string& note) {
  const long prec = 512;
  long cells = 0;
  for (long d : {2L, 3L, -2L}) {
    for (long v : {2L, 3L}) {
      ProblemInstance a = ProblemInstance::make(d, 1, v, CaseTag::GeneralA);
      ProblemInstance b = ProblemInstance::make(d, 1, v, CaseTag::RestrictedB);
      for (long n = 1; n <= 8; ++n) {
        PadeSystem sys = build_pade(n);
        for (long K = 0; K <= 12; ++K) {
          LinearForm f = numeric_form(a, sys, K, std::nullopt, prec);
          DeltaExponents dex = delta_exponent(n, K, CaseTag::GeneralA);
          Rat maxpq = abs(f.p) > abs(f.q_coef) ? abs(f.p) : abs(f.q_coef);
          if (!(maxpq <= lemma6_bound(dex, a))) return false;
          if (!(f.r.abs().hi() <= lemma7_bound(dex, a, prec).lo())) return false;
          ++cells;
          if (K > n) {  // restricted-case scaling changes delta and omega
            long s = std::max(1L, restricted_s_threshold(n, K));
            LinearForm fb = numeric_form(b, sys, K, s, prec);
            DeltaExponents dexb = delta_exponent(n, K, CaseTag::RestrictedB, s);
            Rat maxb = abs(fb.p) > abs(fb.q_coef) ? abs(fb.p) : abs(fb.q_coef);
            if (!(maxb <= lemma6_bound(dexb, b))) return false;
            if (!(fb.r.abs().hi() <= lemma7_bound(dexb, b, prec).lo())) return false;
            ++cells;
          }
        }
      }
    }
  }
  note = std::to_string(cells) + " cells at 512 bits, enclosure-rigorous";
  return true;
}

bool paper_constants(std::string& note) {
  const long prec = 256;
  // a(1)/b(1) = 4/3 exactly; check the interval route to 1e-12 as well
  if (exponent_ratio(CaseTag::GeneralA, Rat(1)) != make_rat(4, 3)) return false;
  ProblemInstance a22 = ProblemInstance::make(2, 1, 2, CaseTag::GeneralA);
  GrowthParams gp = growth_params(a22, Rat(1), prec);
  Enclosure ratio = gp.a / gp.b;
  if (std::abs(ratio.midpoint().to_double() - 4.0 / 3) > 1e-12) return false;

  Certificate c1 = theorem1_certificate(a22, prec);
  if (!c1.main_exponent_exact || *c1.main_exponent_exact != make_rat(7, 3)) return false;

  // asymptotic restricted exponent to 1e-5
  Enclosure asym = enc_long(2, prec) +
                   enc_long(1, prec) / (enc_long(3, prec) + enc_long(2, prec) * enc_long(3, prec).sqrt());
  if (std::abs(asym.midpoint().to_double() - 2.15470) > 1e-5) return false;

  // N2 endpoint: log(2 N2) in [12.0176, 12.0178], N2 = 82836
  Enclosure gamma = enc_long(1, prec) + enc_long(3, prec).sqrt();
  Enclosure tau = enc_rat(make_rat(1, 5), prec);
  Enclosure L = enc_long(2, prec).log();
  Enclosure lg = (enc_long(4, prec) / tau).log();
  Enclosure log2N2 = enc_long(2, prec) * (gamma - enc_long(1, prec)) /
                     ((gamma + enc_long(1, prec)) * L) * lg * lg;
  if (!(log2N2.lo().to_double() > 12.0176 && log2N2.hi().to_double() < 12.0178)) return false;
  if (restricted_N2(gamma, tau, 2, prec) != 82836) return false;

  note = "4/3 exact, 7/3 exact, 2.15470 (1e-5), log(2N2)=12.0177..., N2=82836";
  return true;
}

bool soundness_sweep(std::string& note) {
  const long prec = 512;
  const Int maxN(1000000000);
  long checked = 0;
  double min_ratio = 1e300;

  auto sweep_general = [&](long d, long u, long v) {
    ProblemInstance inst = ProblemInstance::make(d, u, v, CaseTag::GeneralA);
    Certificate cert = theorem1_certificate(inst, prec);
    auto value = [&](long p) { return q_exp(inst, p); };
    std::vector<Convergent> convs = cf_convergents(value, prec, maxN);
    for (const auto& c : convs) {
      if (c.N < cert.N_threshold) continue;
      Enclosure bound = lower_bound_at(cert, c.N);
      if (!(c.distance.lo() >= bound.hi())) return false;
      Real ratio(128);
      mpfr_div(ratio.get(), c.distance.lo().get(), bound.hi().get(), MPFR_RNDD);
      min_ratio = std::min(min_ratio, ratio.to_double());
      ++checked;
    }
    return true;
  };
  if (!sweep_general(2, 1, 2)) return false;
  if (!sweep_general(2, 1, 3)) return false;
  if (!sweep_general(3, 1, 2)) return false;

  // restricted pairs for d=2, t=1/2, s <= 60, |N| >= 82836
  ProblemInstance instb = ProblemInstance::make(2, 1, 2, CaseTag::RestrictedB);
  Certificate cert2 = theorem2_certificate(instb, Int(82836), prec);
  std::vector<RestrictedPair> pairs = restricted_scan(instb, 1, 60, prec);
  long retained = 0;
  for (const auto& pr : pairs) {
    if (abs(pr.N) < cert2.N_threshold) continue;
    Enclosure bound = lower_bound_at(cert2, pr.N);
    if (!(pr.distance.lo() >= bound.hi())) return false;
    Real ratio(128);
    mpfr_div(ratio.get(), pr.distance.lo().get(), bound.hi().get(), MPFR_RNDD);
    min_ratio = std::min(min_ratio, ratio.to_double());
    ++checked;
    ++retained;
  }
  if (retained == 0) return false;  // the sweep must actually exercise pairs

  char buf[160];
  std::snprintf(buf, sizeof buf, "%ld approximants, %ld restricted, min ratio %.3e", checked,
                retained, min_ratio);
  note = buf;
  return min_ratio >= 1.0;
}

bool monotonicity(std::string& note) {
  // case (a): strictly decreasing on (0,1), strictly increasing on
  // (1, 1+sqrt(3)); case (b): strictly decreasing throughout. 1000 samples
  // per side, strict comparisons with 1e-12 slack (exact rationals).
  const Rat slack = make_rat(1, 1000000000000L);
  const Rat min_a = exponent_ratio(CaseTag::GeneralA, Rat(1));
  if (min_a != make_rat(4, 3)) return false;

  Rat prev;
  bool have = false;
  for (long i = 1; i <= 1000; ++i) {  // (0, 1)
    Rat g = make_rat(i, 1001);
    Rat r = exponent_ratio(CaseTag::GeneralA, g);
    if (have && !(prev - r > slack)) return false;
    if (r < min_a) return false;
    prev = r;
    have = true;
  }
  have = false;
  for (long i = 1; i <= 1000; ++i) {  // (1, 1+sqrt(3))
    Rat g = Rat(1) + make_rat(i * 1732, 1000 * 1001);
    Rat r = exponent_ratio(CaseTag::GeneralA, g);
    if (have && !(r - prev > slack)) return false;
    if (r < min_a) return false;
    prev = r;
    have = true;
  }
  have = false;
  for (long i = 1; i <= 1000; ++i) {  // case (b) on (0, 3]
    Rat g = make_rat(3 * i, 1000);
    Rat r = exponent_ratio(CaseTag::RestrictedB, g);
    if (have && !(prev - r > slack)) return false;
    prev = r;
    have = true;
  }
  // infimum over the feasible region approaches 1 + 1/(3+2 sqrt 3)
  double limit = 1 + 1.0 / (3 + 2 * std::sqrt(3.0));
  double near = mpq_get_d(
      exponent_ratio(CaseTag::RestrictedB, make_rat(2732050807L, 1000000000L)).get_mpq_t());
  if (std::abs(near - limit) > 1e-6) return false;
  note = "unimodal (a) with min 4/3 at gamma=1; (b) strictly decreasing";
  return true;
}

bool determinism(std::string& note) {
  std::vector<std::string> args = {"certify", "--d", "2",      "--u",    "1",      "--v", "2",
                                   "--case",  "a", "--n-max", "6",      "--format", "json"};
  CliResult a = run_cli(args);
  CliResult b = run_cli(args);
  if (a.exit_code != 0 || b.exit_code != 0) return false;
  note = std::to_string(a.output.size()) + " bytes, byte-identical";
  return a.output == b.output;
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion(1, "Pade identity exact through t^{2n} with closed-form leading term, n <= 10",
            pade_identity);
  criterion(2, "determinant identity Delta_n = C_n t^{2n+1} exact, n <= 8", determinant_identity);
  criterion(3, "denominator lemma audit over the (n, K, d, v) grid", denominator_audit);
  criterion(4, "polynomial/remainder envelopes on the grid at 512 bits", envelope_bounds);
  criterion(5, "paper constants reproduced", paper_constants);
  criterion(6, "certificate soundness sweep (convergents + restricted pairs)", soundness_sweep);
  criterion(7, "exponent-ratio monotonicity suites", monotonicity);
  criterion(8, "certify output determinism", determinism);
  if (g_failures != 0) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
