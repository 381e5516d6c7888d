#pragma once

// Certificate serialization: versioned JSON schema "qexp-cert/1" and a
// human-readable table. All reals are decimal strings with an explicit
// safe-rounding direction ("up" prints the upper interval endpoint, "down"
// the lower), so a consumer that re-parses a field in its stated direction
// can never strengthen the certified claim. No binary floats appear in the
// output and the byte stream is a deterministic function of the inputs.

#include <json.hpp>

#include <sstream>
#include <string>

#include "qexp/measure.hpp"

namespace qexp {

inline constexpr int kCertDigits = 40;
inline constexpr const char* kCertSchema = "qexp-cert/1";

namespace detail {

inline nlohmann::ordered_json dec_field(const Enclosure& e, bool up) {
  nlohmann::ordered_json j;
  j["dec"] = up ? e.hi().str(kCertDigits, MPFR_RNDU) : e.lo().str(kCertDigits, MPFR_RNDD);
  j["dir"] = up ? "up" : "down";
  return j;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Parse a decimal field back into a point enclosure, rounding once more in
// the recorded safe direction.
inline Enclosure parse_dec_field(const nlohmann::ordered_json& j, long prec) {
  const std::string dec = j.at("dec").get<std::string>();
  const bool up = j.at("dir").get<std::string>() == "up";
  Real v(static_cast<mpfr_prec_t>(prec));
  if (mpfr_set_str(v.get(), dec.c_str(), 10, up ? MPFR_RNDU : MPFR_RNDD) != 0)
    throw std::invalid_argument("certificate: bad decimal field '" + dec + "'");
  return Enclosure(v, v);
}

}  // namespace detail

struct AuditSummary {
  bool ran = false;
  bool ok = false;
  long n_from = 0, n_to = 0;
  double min_margin_Q_bits = 0;
  double min_margin_R_bits = 0;

  static AuditSummary from_report(const EnvelopeReport& rep) {
    AuditSummary s;
    s.ran = true;
    s.ok = rep.ok;
    s.n_from = rep.n_from;
    s.n_to = rep.n_to;
    bool first = true;
    for (const auto& it : rep.items) {
      if (first || it.margin_Q_bits < s.min_margin_Q_bits) s.min_margin_Q_bits = it.margin_Q_bits;
      if (first || it.margin_R_bits < s.min_margin_R_bits) s.min_margin_R_bits = it.margin_R_bits;
      first = false;
    }
    return s;
  }
};

inline nlohmann::ordered_json certificate_to_json(const Certificate& cert,
                                                  const AuditSummary& audit) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = kCertSchema;
  j["case"] = case_name(cert.case_tag);
  j["instance"] = {{"d", cert.inst.d},
                   {"u", cert.inst.u},
                   {"v", cert.inst.v},
                   {"q", detail::rat_str(cert.inst.q())},
                   {"t", detail::rat_str(cert.inst.t())}};
  j["precision_bits"] = cert.precision_bits;
  j["gamma"] = detail::rat_str(cert.gamma);
  if (cert.gamma_fallback) j["gamma_note"] = "no feasible gamma > 1; fell back to gamma = 1";

  ordered_json env;
  env["a"] = detail::dec_field(cert.params.a, true);
  env["a1"] = detail::dec_field(cert.params.a1, true);
  env["a2"] = detail::dec_field(cert.params.a2, true);
  env["b"] = detail::dec_field(cert.params.b, false);
  env["b1"] = detail::dec_field(cert.params.b1, true);
  env["b2"] = detail::dec_field(cert.params.b2, true);
  env["n0"] = cert.params.n0;
  j["envelope"] = env;

  ordered_json cs;
  cs["c1"] = detail::dec_field(cert.consts.c1, true);
  cs["c2"] = detail::dec_field(cert.consts.c2, true);
  cs["c3"] = detail::dec_field(cert.consts.c3, true);
  cs["c4"] = detail::dec_field(cert.c4, true);
  j["constants"] = cs;

  ordered_json ex;
  if (cert.main_exponent_exact) ex["main"] = detail::rat_str(*cert.main_exponent_exact);
  ex["main_decimal"] = detail::dec_field(cert.main_exponent, true);
  if (cert.case_tag == CaseTag::RestrictedB) {
    ex["asymptotic"] = "2+1/(3+2*sqrt(3))";
    ex["asymptotic_decimal"] = detail::dec_field(cert.asymptotic_exponent, true);
    if (cert.exponent_gap) ex["gap"] = detail::dec_field(*cert.exponent_gap, true);
    ex["epsilon2_note"] =
        "epsilon2(N) = gap + error_coefficient/sqrt(log(2|N|)); the gap/error "
        "decomposition is this artifact's definition of epsilon2";
  } else if (cert.main_exponent_exact) {
    ex["asymptotic"] = detail::rat_str(*cert.main_exponent_exact);
  }
  ex["error_coefficient"] = detail::dec_field(cert.error_coefficient, true);
  j["exponent"] = ex;

  ordered_json thr;
  thr["N0"] = detail::dec_field(cert.N0, true);
  thr["N"] = cert.N_threshold.get_str();
  if (cert.N2) thr["N2"] = cert.N2->get_str();
  if (cert.threshold_exceeds_stated_domain)
    thr["note"] =
        "threshold exceeds the stated |N| >= 1 domain; the engine requires "
        "|N| >= N0 and the certificate keeps the stricter condition";
  j["threshold"] = thr;

  ordered_json aj;
  aj["ran"] = audit.ran;
  if (audit.ran) {
    aj["ok"] = audit.ok;
    aj["n_from"] = audit.n_from;
    aj["n_to"] = audit.n_to;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", audit.min_margin_Q_bits);
    aj["min_margin_Q_bits"] = buf;
    std::snprintf(buf, sizeof buf, "%.6f", audit.min_margin_R_bits);
    aj["min_margin_R_bits"] = buf;
  }
  j["envelope_audit"] = aj;

  std::string target = cert.case_tag == CaseTag::GeneralA ? "M/N" : "d^s/N";
  j["claim"] = "|E_q(t) - " + target +
               "| >= exp(-c4) * (2|N|)^-(mu + eps(N)) for all admissible pairs with |N| >= N, "
               "mu the main/asymptotic exponent and eps(N) = (gap +) "
               "error_coefficient/sqrt(log(2|N|))";
  return j;
}

// Reconstruct the parts of a certificate that the validator needs; every
// decimal is re-rounded in its recorded safe direction.
inline Certificate certificate_from_json(const nlohmann::ordered_json& j) {
  if (j.at("schema").get<std::string>() != kCertSchema)
    throw std::invalid_argument("certificate: unsupported schema");
  Certificate cert;
  const auto& inst = j.at("instance");
  CaseTag tag = j.at("case").get<std::string>() == "a" ? CaseTag::GeneralA : CaseTag::RestrictedB;
  cert.inst = ProblemInstance::make(inst.at("d").get<long>(), inst.at("u").get<long>(),
                                    inst.at("v").get<long>(), tag);
  cert.case_tag = tag;
  cert.precision_bits = j.at("precision_bits").get<long>();
  cert.gamma = Rat(j.at("gamma").get<std::string>());
  cert.gamma.canonicalize();
  const long prec = cert.precision_bits;

  const auto& env = j.at("envelope");
  cert.params.case_tag = tag;
  cert.params.gamma = cert.gamma;
  cert.params.precision_bits = prec;
  cert.params.a = detail::parse_dec_field(env.at("a"), prec);
  cert.params.a1 = detail::parse_dec_field(env.at("a1"), prec);
  cert.params.a2 = detail::parse_dec_field(env.at("a2"), prec);
  cert.params.b = detail::parse_dec_field(env.at("b"), prec);
  cert.params.b1 = detail::parse_dec_field(env.at("b1"), prec);
  cert.params.b2 = detail::parse_dec_field(env.at("b2"), prec);
  cert.params.n0 = env.at("n0").get<long>();

  const auto& cs = j.at("constants");
  cert.consts.c1 = detail::parse_dec_field(cs.at("c1"), prec);
  cert.consts.c2 = detail::parse_dec_field(cs.at("c2"), prec);
  cert.consts.c3 = detail::parse_dec_field(cs.at("c3"), prec);
  cert.c4 = detail::parse_dec_field(cs.at("c4"), prec);

  const auto& ex = j.at("exponent");
  if (ex.contains("main")) cert.main_exponent_exact = Rat(ex.at("main").get<std::string>());
  cert.main_exponent = detail::parse_dec_field(ex.at("main_decimal"), prec);
  cert.error_coefficient = detail::parse_dec_field(ex.at("error_coefficient"), prec);
  cert.asymptotic_exponent = ex.contains("asymptotic_decimal")
                                 ? detail::parse_dec_field(ex.at("asymptotic_decimal"), prec)
                                 : cert.main_exponent;

  const auto& thr = j.at("threshold");
  cert.N0 = detail::parse_dec_field(thr.at("N0"), prec);
  cert.N_threshold = Int(thr.at("N").get<std::string>());
  if (thr.contains("N2")) cert.N2 = Int(thr.at("N2").get<std::string>());
  return cert;
}

inline std::string certificate_to_text(const Certificate& cert, const AuditSummary& audit) {
  std::ostringstream os;
  auto line = [&os](const std::string& k, const std::string& v) {
    os << "  " << k;
    for (std::size_t i = k.size(); i < 22; ++i) os << ' ';
    os << v << "\n";
  };
  os << "q-exponential irrationality-measure certificate (" << kCertSchema << ")\n";
  line("case", case_name(cert.case_tag));
  line("d, u, v", std::to_string(cert.inst.d) + ", " + std::to_string(cert.inst.u) + ", " +
                      std::to_string(cert.inst.v));
  line("q, t", detail::rat_str(cert.inst.q()) + ", " + detail::rat_str(cert.inst.t()));
  line("gamma", detail::rat_str(cert.gamma) + (cert.gamma_fallback ? "  (fallback)" : ""));
  line("precision (bits)", std::to_string(cert.precision_bits));
  line("a (up)", cert.params.a.hi().str(20, MPFR_RNDU));
  line("a1 (up)", cert.params.a1.hi().str(20, MPFR_RNDU));
  line("a2 (up)", cert.params.a2.hi().str(20, MPFR_RNDU));
  line("b (down)", cert.params.b.lo().str(20, MPFR_RNDD));
  line("b1 (up)", cert.params.b1.hi().str(20, MPFR_RNDU));
  line("b2 (up)", cert.params.b2.hi().str(20, MPFR_RNDU));
  line("n0", std::to_string(cert.params.n0));
  line("c1 (up)", cert.consts.c1.hi().str(20, MPFR_RNDU));
  line("c2 (up)", cert.consts.c2.hi().str(20, MPFR_RNDU));
  line("c3 (up)", cert.consts.c3.hi().str(20, MPFR_RNDU));
  line("c4 (up)", cert.c4.hi().str(20, MPFR_RNDU));
  if (cert.main_exponent_exact) line("main exponent", detail::rat_str(*cert.main_exponent_exact));
  line("main exponent (up)", cert.main_exponent.hi().str(20, MPFR_RNDU));
  if (cert.case_tag == CaseTag::RestrictedB) {
    line("asymptotic exponent", "2+1/(3+2*sqrt(3)) = " + cert.asymptotic_exponent.hi().str(20, MPFR_RNDU));
    if (cert.exponent_gap) line("exponent gap (up)", cert.exponent_gap->hi().str(20, MPFR_RNDU));
  }
  line("error coeff (up)", cert.error_coefficient.hi().str(20, MPFR_RNDU));
  line("N0 (up)", cert.N0.hi().str(20, MPFR_RNDU));
  line("N threshold", cert.N_threshold.get_str());
  if (cert.N2) line("N2", cert.N2->get_str());
  if (audit.ran) {
    line("envelope audit", std::string(audit.ok ? "ok" : "FAILED") + ", n in [" +
                               std::to_string(audit.n_from) + ", " + std::to_string(audit.n_to) +
                               "]");
    char buf[128];
    std::snprintf(buf, sizeof buf, "Q %.3f bits, R %.3f bits", audit.min_margin_Q_bits,
                  audit.min_margin_R_bits);
    line("min audit margins", buf);
  }
  return os.str();
}

}  // namespace qexp
