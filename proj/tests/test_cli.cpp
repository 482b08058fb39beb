// SPDX-License-Identifier: Apache-2.0
//
// End-to-end tests of the command-line surface. The binary path comes
// from the GATEBOUND_CLI environment variable (set by ctest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

std::string cli_path() {
  const char* env = std::getenv("GATEBOUND_CLI");
  REQUIRE_MESSAGE(env != nullptr, "GATEBOUND_CLI must point at the binary");
  return env;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd = env_prefix + "'" + cli_path() + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer;
  std::size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("bound: direct-values mode reproduces the published arithmetic") {
  const RunResult r =
      run("bound --fk 0.928,0.947,0.955 --sk 528000,528000,528000");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(std::abs(j.at("lower_bound").get<double>() - 0.830) <= 1e-12);
  CHECK(j.at("mode") == "arithmetic-only");
  const double three_sigma = 3.0 * j.at("lower_bound_sigma").get<double>();
  CHECK(three_sigma > 0.001);
  CHECK(three_sigma < 0.003);
}

TEST_CASE("bound: ideal gate and noisy mixtures") {
  const json ideal = json::parse(run("bound --preset ccz-ideal").output);
  CHECK(ideal.at("lower_bound").get<double>() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ideal.at("upper_bound").get<double>() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ideal.at("exact").get<double>() == doctest::Approx(1.0).epsilon(1e-10));

  const json mix = json::parse(
      run("bound --preset ccz-ideal --noise vm-mixture:uniform").output);
  CHECK(mix.at("lower_bound").get<double>() == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(mix.at("exact").get<double>() == doctest::Approx(0.25).epsilon(1e-9));

  const json hof = json::parse(
      run("bound --preset ccz-ideal --hofmann 3,3p").output);
  CHECK(hof.at("hofmann").at("value").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(hof.at("hofmann").at("pair")[1] == "3p");
}

TEST_CASE("simulate: expectation mode yields unit fidelities") {
  const RunResult r = run("simulate --preset ccz-ideal --expectation");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  for (const auto& basis : j.at("bases"))
    CHECK(basis.at("F").get<double>() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(j.at("bound").at("lower_bound").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("mc: settings count follows the accuracy formula") {
  const RunResult r =
      run("mc --preset ccz-ideal --epsilon 0.01 --p 0.9 --seed 7 --shots 0");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j.at("settings").get<long>() == 100000);
  CHECK(j.at("estimate").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j.at("method") == "mc");
}

TEST_CASE("optics: ideal preset") {
  const RunResult r = run("optics --params ideal");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j.at("process_fidelity").get<double>() == doctest::Approx(1.0).epsilon(1e-10));
  for (const auto& row : j.at("success_table"))
    CHECK(row.at("success").get<double>() ==
          doctest::Approx(1.0 / 9.0).epsilon(1e-10));
}

TEST_CASE("settings-account: published counts") {
  const json j = json::parse(run("settings-account --gate toffoli").output);
  CHECK(j.at("nonzero_pairs").get<long>() == 232);
  CHECK(j.at("mc").at("nontrivial_averages").get<long>() == 63);
  CHECK(j.at("mc").at("settings").get<long>() == 504);
  CHECK(j.at("mc").at("settings_single_outcome").get<long>() == 4032);
  CHECK(j.at("bound_protocol").at("settings").get<long>() == 24);
  CHECK(j.at("bound_protocol").at("settings_single_outcome").get<long>() == 192);
}

TEST_CASE("certify: three qubits pass") {
  const RunResult r = run("certify --n 3 --random-unitaries 5");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("t_tilde_dual_path_match").get<bool>());
}

TEST_CASE("ghz: pipeline on exact expectation values") {
  const RunResult r = run("ghz --input bell-plus --expectation");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j.at("fidelity_vs_target").get<double>() >= 1.0 - 1e-6);
  CHECK(j.at("likelihood_monotone").get<bool>());
  CHECK(std::abs(j.at("phase_compensation").at("phi_opt").get<double>()) < 1e-6);
}

TEST_CASE("seeded runs are byte-identical across runs and thread counts") {
  const std::string args =
      "simulate --preset ccz-ideal --noise depolarizing:0.1 --seed 99 "
      "--mean-total 20000 --out /tmp/gatebound_counts_a.csv";
  const RunResult a = run(args, "GATEBOUND_THREADS=1 ");
  const std::string args_b =
      "simulate --preset ccz-ideal --noise depolarizing:0.1 --seed 99 "
      "--mean-total 20000 --out /tmp/gatebound_counts_b.csv";
  const RunResult b = run(args_b, "GATEBOUND_THREADS=4 ");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(read_file("/tmp/gatebound_counts_a.csv") ==
        read_file("/tmp/gatebound_counts_b.csv"));

  const RunResult mc1 = run("mc --preset ccz-ideal --epsilon 0.05 --p 0.9 "
                            "--seed 3 --shots 20");
  const RunResult mc2 = run("mc --preset ccz-ideal --epsilon 0.05 --p 0.9 "
                            "--seed 3 --shots 20");
  CHECK(mc1.output == mc2.output);
}

TEST_CASE("bound CSV format") {
  const RunResult r = run("--format csv bound --fk 0.928,0.947,0.955");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.rfind("k,F\n", 0) == 0);
  CHECK(r.output.find("lower_bound,0.83") != std::string::npos);
  CHECK(r.output.find("upper_bound,0.92") != std::string::npos);
}

TEST_CASE("counts CSV layout") {
  const RunResult r = run(
      "simulate --preset ccz-ideal --seed 5 --mean-total 1000 "
      "--out /tmp/gatebound_counts_fmt.csv");
  REQUIRE(r.exit_code == 0);
  const std::string csv = read_file("/tmp/gatebound_counts_fmt.csv");
  CHECK(csv.rfind("j,jprime,count,k\n", 0) == 0);
  // 3 bases x 64 rows + header.
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 1 + 3 * 64);
}

TEST_CASE("exit codes") {
  CHECK(run("bound --no-such-flag").exit_code == 2);
  CHECK(run("bound").exit_code == 2);  // no channel source
  CHECK(run("simulate --preset ccz-ideal").exit_code == 2);  // missing seed
  CHECK(run("bound --kraus /nonexistent/path.json").exit_code == 4);

  // Physically invalid channel input: validation failure.
  {
    std::ofstream bad("/tmp/gatebound_bad_kraus.json");
    // Over-complete Kraus pair (I and Z both at weight 1).
    bad << R"({"n_qubits":1,"operators":[)"
        << R"([[1,0],[0,0],[0,0],[1,0]],)"
        << R"([[1,0],[0,0],[0,0],[-1,0]]]})";
  }
  CHECK(run("bound --kraus /tmp/gatebound_bad_kraus.json").exit_code == 3);
}

TEST_CASE("help lists every documented flag") {
  const RunResult top = run("--help");
  REQUIRE(top.exit_code == 0);
  for (const char* sub : {"bound", "certify", "simulate", "mc", "optics",
                          "ghz", "settings-account"})
    CHECK(top.output.find(sub) != std::string::npos);
  for (const char* flag : {"--seed", "--out", "--format", "--expectation"})
    CHECK(top.output.find(flag) != std::string::npos);

  const RunResult bound_help = run("bound --help");
  for (const char* flag : {"--preset", "--kraus", "--optics", "--noise",
                           "--fk", "--sk", "--hofmann", "--n", "--dephasing"})
    CHECK(bound_help.output.find(flag) != std::string::npos);

  const RunResult mc_help = run("mc --help");
  for (const char* flag : {"--epsilon", "--p", "--shots"})
    CHECK(mc_help.output.find(flag) != std::string::npos);

  const RunResult certify_help = run("certify --help");
  for (const char* flag : {"--n", "--random-unitaries"})
    CHECK(certify_help.output.find(flag) != std::string::npos);

  const RunResult sim_help = run("simulate --help");
  for (const char* flag : {"--mean-total", "--hofmann", "--preset"})
    CHECK(sim_help.output.find(flag) != std::string::npos);

  const RunResult optics_help = run("optics --help");
  for (const char* flag : {"--params", "--dephasing"})
    CHECK(optics_help.output.find(flag) != std::string::npos);

  const RunResult ghz_help = run("ghz --help");
  for (const char* flag : {"--input", "--mean-per-setting", "--phase-site"})
    CHECK(ghz_help.output.find(flag) != std::string::npos);

  const RunResult settings_help = run("settings-account --help");
  for (const char* flag : {"--gate", "--n"})
    CHECK(settings_help.output.find(flag) != std::string::npos);
}
