#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdlib>
#include <fstream>

#include "qexp/cli.hpp"

using namespace qexp;

namespace {

CliResult run(std::initializer_list<std::string> args) {
  return run_cli(std::vector<std::string>(args));
}

}  // namespace

TEST_CASE("verify-pade passes on the default configuration") {
  CliResult r = run({"verify-pade", "--n-max", "5", "--k-max", "6", "--precision", "128"});
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("all checks passed") != std::string::npos);
}

TEST_CASE("verify-pade detects an injected corruption") {
  CliResult r = run({"verify-pade", "--n-max", "3", "--inject-fault", "pade"});
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("FAIL") != std::string::npos);
}

TEST_CASE("certify case (a) emits the schema with exact main exponent") {
  CliResult r = run({"certify", "--d", "2", "--u", "1", "--v", "2", "--case", "a",
                     "--precision", "128", "--n-max", "6", "--format", "json"});
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::ordered_json::parse(r.output);
  CHECK(j["schema"] == "qexp-cert/1");
  CHECK(j["exponent"]["main"] == "7/3");
  CHECK(j["envelope_audit"]["ok"] == true);
  CHECK(j["threshold"]["N"] == "1");
}

TEST_CASE("certify output is byte-identical across runs") {
  std::vector<std::string> args = {"certify", "--d", "2", "--u",      "1",   "--v",
                                   "2",       "--case", "a", "--n-max", "5", "--format", "json"};
  CliResult a = run_cli(args);
  CliResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
}

TEST_CASE("certify case (b) reports the asymptotic exponent") {
  CliResult r = run({"certify", "--d", "2", "--u", "1", "--v", "2", "--case", "b",
                     "--precision", "160", "--n-max", "6", "--n-bound", "10000000",
                     "--format", "json"});
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::ordered_json::parse(r.output);
  CHECK(j["exponent"]["asymptotic"] == "2+1/(3+2*sqrt(3))");
  std::string dec = j["exponent"]["asymptotic_decimal"]["dec"];
  CHECK(dec.substr(0, 6) == "2.1547");
  CHECK(j["threshold"].contains("N2"));
}

TEST_CASE("certificate JSON round-trips through the parser") {
  CliResult r = run({"certify", "--case", "a", "--n-max", "4", "--format", "json"});
  REQUIRE(r.exit_code == 0);
  Certificate cert = certificate_from_json(nlohmann::ordered_json::parse(r.output));
  CHECK(cert.inst.d == 2);
  CHECK(cert.gamma == 1);
  REQUIRE(cert.main_exponent_exact.has_value());
  CHECK(*cert.main_exponent_exact == make_rat(7, 3));
  // a parsed certificate still produces sane bounds
  Enclosure b = lower_bound_at(cert, Int(1000));
  CHECK(b.is_positive());
}

TEST_CASE("validate accepts a fresh case (a) certificate") {
  const std::string path = "/tmp/qexp_test_cert_a.json";
  CliResult c = run({"certify", "--case", "a", "--n-max", "5", "--format", "json",
                     "--out", path});
  REQUIRE(c.exit_code == 0);
  CliResult v = run({"validate", "--cert", path, "--n-bound", "1000000", "--precision", "256"});
  INFO(v.output);
  CHECK(v.exit_code == 0);
  CHECK(v.output.find("no violations") != std::string::npos);
}

TEST_CASE("validate flags a deliberately strengthened certificate") {
  const std::string path = "/tmp/qexp_test_cert_fault.json";
  CliResult c = run({"certify", "--case", "a", "--n-max", "4", "--format", "json",
                     "--out", path});
  REQUIRE(c.exit_code == 0);
  CliResult v = run({"validate", "--cert", path, "--n-bound", "100000", "--inject-fault",
                     "exponent"});
  CHECK(v.exit_code == 1);
  CHECK(v.output.find("SOUNDNESS VIOLATION") != std::string::npos);
}

TEST_CASE("scan-restricted lists certified pairs") {
  CliResult r = run({"scan-restricted", "--d", "2", "--u", "1", "--v", "2", "--s-max", "22",
                     "--precision", "192"});
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("s=20  N=302816") != std::string::npos);
}

TEST_CASE("eval prints both enclosures") {
  CliResult r = run({"eval", "--d", "2", "--u", "1", "--v", "2", "--precision", "128"});
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("series") != std::string::npos);
  CHECK(r.output.find("3.4627466194550636") != std::string::npos);
}

TEST_CASE("configuration errors exit with code 2") {
  CHECK(run({"eval", "--d", "1"}).exit_code == 2);               // |d| < 2
  CHECK(run({"eval", "--u", "3", "--v", "2"}).exit_code == 2);   // |t| >= 1
  CHECK(run({"eval", "--u", "2", "--v", "4"}).exit_code == 2);   // gcd != 1
  CHECK(run({"bogus-subcommand"}).exit_code == 2);
  CHECK(run({"certify", "--case", "c"}).exit_code == 2);
}

TEST_CASE("precision exhaustion exits with code 3") {
  const std::string path = "/tmp/qexp_test_cert_cap.json";
  CliResult c = run({"certify", "--case", "a", "--n-max", "3", "--format", "json",
                     "--out", path});
  REQUIRE(c.exit_code == 0);
  // convergents to 10^100 need ~670 bits; the cap stops the escalation
  setenv("QEXP_PRECISION_CAP", "512", 1);
  std::string huge = "1" + std::string(100, '0');
  CliResult r = run({"validate", "--cert", path, "--n-bound", huge, "--precision", "64"});
  unsetenv("QEXP_PRECISION_CAP");
  CHECK(r.exit_code == 3);
}

TEST_CASE("atomic output writes the report file") {
  const std::string path = "/tmp/qexp_test_eval.txt";
  std::remove(path.c_str());
  CliResult r = run({"eval", "--out", path});
  CHECK(r.exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(all == r.output);
}

#ifdef QEXP_CLI_PATH
TEST_CASE("installed binary round-trip") {
  std::string cmd = std::string(QEXP_CLI_PATH) + " eval --d 2 --u 1 --v 2 > /tmp/qexp_bin_out.txt";
  int rc = std::system(cmd.c_str());
  CHECK(rc == 0);
  std::ifstream in("/tmp/qexp_bin_out.txt");
  std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(all.find("3.4627466") != std::string::npos);
}
#endif
