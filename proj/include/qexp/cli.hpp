#pragma once

// Command-line surface. Subcommands:
//
//   verify-pade     identity / determinant / degree suites
//   certify         emit an irrationality-measure certificate
//   validate        sweep a certificate against the numeric oracle
//   scan-restricted list close d^s/N approximants
//   eval            enclose E_q(t) by both formulas
//
// Exit codes: 0 success, 1 check failure, 2 configuration error,
// 3 precision exhaustion.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qexp/certificate_io.hpp"
#include "qexp/forms.hpp"
#include "qexp/measure.hpp"
#include "qexp/oracle.hpp"
#include "qexp/pade.hpp"

namespace qexp {

struct RunConfig {
  long d = 2;
  long u = 1;
  long v = 2;
  std::string case_tag = "a";
  long precision = 256;
  long n_max = 8;
  long k_max = 8;
  std::string gamma;  // optional exact rational, e.g. "1", "3/2"
  long s_max = 40;
  std::string n_bound = "1000000";
  std::string out_path;
  std::string format = "text";
  std::string inject_fault;  // test hook: "", "pade", "exponent"

  ProblemInstance instance() const {
    return ProblemInstance::make(d, u, v,
                                 case_tag == "a" ? CaseTag::GeneralA : CaseTag::RestrictedB);
  }

  Int big_n_bound() const { return Int(n_bound); }
};

struct CliResult {
  int exit_code = 0;
  std::string output;
};

namespace cli_detail {

inline void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) return;
  const std::string tmp = cfg.out_path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open output file " + tmp);
    os << text;
  }
  if (std::rename(tmp.c_str(), cfg.out_path.c_str()) != 0)
    throw std::runtime_error("cannot move output into place at " + cfg.out_path);
}

inline int cmd_verify_pade(const RunConfig& cfg, std::ostream& os) {
  const ProblemInstance inst = cfg.instance();
  const Rat q = inst.q();
  long failures = 0;
  os << "pade verification, q = " << q.get_str() << ", n <= " << cfg.n_max << "\n";
  for (long n = 0; n <= cfg.n_max; ++n) {
    PadeSystem sys = build_pade(n);
    if (cfg.inject_fault == "pade" && n == std::min<long>(1, cfg.n_max))
      sys.A.add_term(0, 0, Int(1));  // deliberate corruption (test mode)
    // identity
    try {
      verify_pade_identity(sys, q, 2 * n + 8);
      os << "  n=" << n << " identity: ok\n";
    } catch (const check_failure& e) {
      ++failures;
      os << "  n=" << n << " identity: FAIL (" << e.what() << ")\n";
    }
    // degree bounds of the shifted systems
    bool deg_ok = true;
    for (long K = 0; K <= cfg.k_max && deg_ok; ++K) {
      ShiftedSystem sh = shift_accelerate(sys, K);
      if (n >= 1) {
        DeltaExponents dex = delta_exponent(n, K, CaseTag::GeneralA);
        long degB = checked_add(checked_mul(K, K - 1) / 2,
                                checked_mul(n, checked_add(3 * n, 1)) / 2);
        if (K > n)
          degB = checked_add(checked_add(checked_mul(K, K - 1) / 2, checked_mul(n, n - 1) / 2),
                             checked_mul(n, K));
        long degA = K <= n ? dex.delta : checked_add(checked_mul(n, n), checked_mul(n, K));
        if (sh.A.deg_q() > degA || sh.tB.deg_q() > degB || sh.tB.deg_t() != n + K ||
            sh.A.deg_t() != n)
          deg_ok = false;
      }
    }
    if (!deg_ok) {
      ++failures;
      os << "  n=" << n << " degree bounds: FAIL\n";
    } else {
      os << "  n=" << n << " degree bounds: ok (K <= " << cfg.k_max << ")\n";
    }
  }
  for (long n = 0; n < cfg.n_max; ++n) {
    try {
      DeterminantResult det = determinant(n, q);
      os << "  n=" << n << " determinant: ok, C_n = " << det.C_at_q.get_str() << "\n";
    } catch (const check_failure& e) {
      ++failures;
      os << "  n=" << n << " determinant: FAIL (" << e.what() << ")\n";
    }
  }
  os << (failures == 0 ? "all checks passed\n" : "FAILURES: " + std::to_string(failures) + "\n");
  return failures == 0 ? 0 : 1;
}

inline int cmd_certify(const RunConfig& cfg, std::ostream& os) {
  const ProblemInstance inst = cfg.instance();
  Certificate cert;
  if (inst.case_tag == CaseTag::GeneralA) {
    if (!cfg.gamma.empty() && cfg.gamma != "1") {
      Rat g(cfg.gamma);
      g.canonicalize();
      cert = lemma1_certificate(inst, g, cfg.precision);
    } else {
      cert = theorem1_certificate(inst, cfg.precision);
    }
  } else {
    cert = theorem2_certificate(inst, cfg.big_n_bound(), cfg.precision);
  }
  EnvelopeReport rep = envelope_audit(inst, cert.params, cfg.n_max, cfg.precision);
  AuditSummary audit = AuditSummary::from_report(rep);
  if (!rep.ok) {
    os << "envelope audit FAILED; certificate not emitted\n";
    for (const auto& it : rep.items)
      if (!it.ok) os << "  violation at n=" << it.n << " K=" << it.K << "\n";
    return 1;
  }
  std::string text = cfg.format == "json" ? certificate_to_json(cert, audit).dump(2) + "\n"
                                          : certificate_to_text(cert, audit);
  os << text;
  return 0;
}

inline int cmd_validate(const RunConfig& cfg, const std::string& cert_path, std::ostream& os) {
  std::ifstream in(cert_path);
  if (!in) throw std::invalid_argument("cannot open certificate file " + cert_path);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(in);
  Certificate cert = certificate_from_json(j);
  if (cfg.inject_fault == "exponent") {
    // test hook: claim a flatly better measure than certified
    const mpfr_prec_t p = static_cast<mpfr_prec_t>(cert.precision_bits);
    cert.main_exponent_exact = make_rat(2, 1);
    cert.error_coefficient = enc_long(0, p);
    cert.c4 = enc_long(0, p);
  }
  const ProblemInstance inst = cert.inst;
  const long prec = std::max<long>(cfg.precision, 512);

  bool violated = false;
  bool first_ratio = true;
  Real min_ratio(static_cast<mpfr_prec_t>(prec));
  long checked = 0;
  auto consider = [&](const Int& N, const Enclosure& dist) {
    Enclosure bound = lower_bound_at(cert, N);
    Real ratio(static_cast<mpfr_prec_t>(prec));
    mpfr_div(ratio.get(), dist.lo().get(), bound.hi().get(), MPFR_RNDD);
    if (first_ratio || ratio.cmp(min_ratio) < 0) min_ratio = ratio;
    first_ratio = false;
    ++checked;
    if (!(dist.lo() >= bound.hi())) violated = true;
  };

  auto value = [&](long p) { return q_exp(inst, p); };
  std::vector<Convergent> convs = cf_convergents(value, prec, cfg.big_n_bound());
  for (const auto& c : convs)
    if (c.N >= cert.N_threshold) consider(c.N, c.distance);

  if (cert.case_tag == CaseTag::RestrictedB) {
    std::vector<RestrictedPair> pairs = restricted_scan(inst, 1, cfg.s_max, prec);
    for (const auto& pr : pairs) {
      if (abs(pr.N) < cert.N_threshold) continue;
      if (!pr.distance.is_positive()) {
        // distance not separated from zero at this precision
        std::vector<RestrictedPair> retry = restricted_scan(inst, pr.s, pr.s, prec * 4);
        for (const auto& r2 : retry)
          if (r2.N == pr.N) consider(r2.N, r2.distance);
        continue;
      }
      consider(pr.N, pr.distance);
    }
  }

  os << "validated " << checked << " approximants against the certificate\n";
  if (checked > 0)
    os << "min distance/bound ratio (rounded down): " << min_ratio.str(15, MPFR_RNDD) << "\n";
  os << (violated ? "SOUNDNESS VIOLATION detected\n" : "no violations\n");
  return violated ? 1 : 0;
}

inline int cmd_scan_restricted(const RunConfig& cfg, std::ostream& os) {
  RunConfig c2 = cfg;
  c2.case_tag = "b";
  const ProblemInstance inst = c2.instance();
  std::vector<RestrictedPair> pairs = restricted_scan(inst, 1, cfg.s_max, cfg.precision);
  os << "retained close approximants d^s/N with |tau - d^s/N| < 1/|N|:\n";
  for (const auto& pr : pairs)
    os << "  s=" << pr.s << "  N=" << pr.N.get_str()
       << "  distance in [" << pr.distance.lo().str(12, MPFR_RNDD) << ", "
       << pr.distance.hi().str(12, MPFR_RNDU) << "]\n";
  os << pairs.size() << " pairs\n";
  return 0;
}

inline int cmd_eval(const RunConfig& cfg, std::ostream& os) {
  const ProblemInstance inst = cfg.instance();
  Enclosure s = q_exp_series(inst.q(), inst.t(), cfg.precision);
  Enclosure p = q_exp_product(inst.q(), inst.t(), cfg.precision);
  Enclosure both = q_exp(inst, cfg.precision);
  const int digits = 40;
  os << "E_q(t), q = " << inst.q().get_str() << ", t = " << inst.t().get_str() << "\n";
  os << "  series  " << s.str(digits) << "\n";
  os << "  product " << p.str(digits) << "\n";
  os << "  final   " << both.str(digits) << "\n";
  return 0;
}

}  // namespace cli_detail

inline CliResult run_cli(const std::vector<std::string>& args) {
  RunConfig cfg;
  std::string cert_path;

  CLI::App app{"Pade-based irrationality-measure certificates for the q-exponential E_q(t)"};
  app.require_subcommand(1);

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--d", cfg.d, "q = 1/d, |d| >= 2");
    sub->add_option("--u", cfg.u, "t = u/v numerator");
    sub->add_option("--v", cfg.v, "t = u/v denominator");
    sub->add_option("--case", cfg.case_tag, "approximation case: a (M/N) or b (d^s/N)")
        ->check(CLI::IsMember({"a", "b"}));
    sub->add_option("--precision", cfg.precision, "working precision in bits")
        ->check(CLI::PositiveNumber);
    sub->add_option("--n-max", cfg.n_max, "largest Pade order in suites");
    sub->add_option("--k-max", cfg.k_max, "largest shift K in suites");
    sub->add_option("--gamma", cfg.gamma, "slope K/n as an exact rational, e.g. 1 or 3/2");
    sub->add_option("--s-max", cfg.s_max, "largest exponent s in restricted scans");
    sub->add_option("--n-bound", cfg.n_bound, "denominator bound / reference N (integer)");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", cfg.out_path, "write the report to this path (atomically)");
    sub->add_option("--inject-fault", cfg.inject_fault, "test hook")
        ->group("");  // hidden
  };

  CLI::App* verify = app.add_subcommand("verify-pade", "run identity/determinant/degree suites");
  CLI::App* certify = app.add_subcommand("certify", "emit a certificate");
  CLI::App* validate = app.add_subcommand("validate", "sweep a certificate against the oracle");
  validate->add_option("--cert", cert_path, "certificate JSON file")->required();
  CLI::App* scan = app.add_subcommand("scan-restricted", "list close d^s/N approximants");
  CLI::App* eval = app.add_subcommand("eval", "enclose E_q(t)");
  for (CLI::App* sub : {verify, certify, validate, scan, eval}) add_common(sub);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  std::ostringstream os;
  int code = 0;
  try {
    app.parse(rev);
    if (app.got_subcommand(verify)) code = cli_detail::cmd_verify_pade(cfg, os);
    else if (app.got_subcommand(certify)) code = cli_detail::cmd_certify(cfg, os);
    else if (app.got_subcommand(validate)) code = cli_detail::cmd_validate(cfg, cert_path, os);
    else if (app.got_subcommand(scan)) code = cli_detail::cmd_scan_restricted(cfg, os);
    else if (app.got_subcommand(eval)) code = cli_detail::cmd_eval(cfg, os);
    if (code == 0 || code == 1) cli_detail::write_output(cfg, os.str());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::ostringstream h;
      h << app.help();
      return CliResult{0, h.str()};
    }
    return CliResult{2, std::string("configuration error: ") + e.what() + "\n"};
  } catch (const precision_exhausted& e) {
    return CliResult{3, std::string("precision exhausted: ") + e.what() + "\n"};
  } catch (const check_failure& e) {
    return CliResult{1, std::string("check failure: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    return CliResult{2, std::string("configuration error: ") + e.what() + "\n"};
  } catch (const std::domain_error& e) {
    return CliResult{2, std::string("configuration error: ") + e.what() + "\n"};
  }
  return CliResult{code, os.str()};
}

}  // namespace qexp
