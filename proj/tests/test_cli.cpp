#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <string>

#ifndef QCONNECT_CLI
#error "QCONNECT_CLI must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(QCONNECT_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
    out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("verify exits 0 on passing relations") {
  const RunResult r = run("verify rp-connection --m 1 --trials 20 --seed 7");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("passes=20") != std::string::npos);
}

TEST_CASE("verify cocycle") {
  const RunResult r = run("verify cocycle --m 2 --trials 50 --seed 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("failures=0") != std::string::npos);
}

TEST_CASE("invalid configuration exits 2") {
  CHECK(run("verify rp-connection --trials 0").exit_code == 2);
  CHECK(run("verify no-such-relation").exit_code == 2);
  CHECK(run("eval nosuchfn 1 --q 0.5").exit_code == 2);
  CHECK(run("verify rp-connection --q 1.5").exit_code == 2);
}

TEST_CASE("eval pass-through values") {
  RunResult r = run("eval qpoch 0 --q 0.3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.substr(0, 2) == "1 ");

  r = run("eval theta 0.5 --q 0.5");
  CHECK(r.exit_code == 0);
  const auto json_at = r.out.find('{');
  REQUIRE(json_at != std::string::npos);
  const auto j = nlohmann::json::parse(r.out.substr(json_at));
  CHECK(std::isfinite(j["value"][0].get<double>()));

  // terminating very-well-poised series: a4 = q^{-2} stops the sum after
  // three terms; compare against the finite sum computed here
  const double q = 0.5;
  const double a1 = 0.3, a4 = 1.0 / (q * q), a5 = 1.2, a6 = 0.4, a7 = 0.9,
               a8 = 1.5, z = 0.6;
  double want = 0.0;
  {
    double upper[5] = {a4, a5, a6, a7, a8};
    for (int n = 0; n <= 2; ++n) {
      double qn = std::pow(q, n);
      double term = (1.0 - a1 * qn * qn) / (1.0 - a1) * std::pow(z, n);
      for (int i = 0; i < n; ++i) {
        const double qi = std::pow(q, i);
        term *= (1.0 - a1 * qi) / (1.0 - q * qi);
        for (double u : upper) term *= (1.0 - u * qi) / (1.0 - q * a1 / u * qi);
      }
      want += term;
    }
  }
  char cmd[256];
  std::snprintf(cmd, sizeof cmd, "eval w87 %.17g %.17g %.17g %.17g %.17g %.17g %.17g --q %.17g",
                a1, a4, a5, a6, a7, a8, z, q);
  r = run(cmd);
  CHECK(r.exit_code == 0);
  const double got = std::stod(r.out);
  CHECK(std::abs(got - want) < 1e-12 * std::abs(want));
}

TEST_CASE("sample is byte-reproducible and reloadable") {
  const RunResult r1 = run("sample --m 2 --seed 99");
  const RunResult r2 = run("sample --m 2 --seed 99");
  CHECK(r1.exit_code == 0);
  CHECK(r1.out == r2.out);

  const auto j = nlohmann::json::parse(r1.out);
  CHECK(j["m"] == 2);
  const double q = j["q"].get<double>();
  std::complex<double> pa{1.0, 0.0}, pb{1.0, 0.0};
  for (const auto& v : j["a"])
    pa *= std::complex<double>(v[0].get<double>(), v[1].get<double>());
  for (const auto& v : j["b"])
    pb *= std::complex<double>(v[0].get<double>(), v[1].get<double>());
  CHECK(std::abs(pa - q * q * pb) < 1e-10 * std::abs(q * q * pb));
}

TEST_CASE("sampler succeeds across a seed sweep") {
  for (int seed = 1; seed <= 100; ++seed) {
    char cmd[128];
    std::snprintf(cmd, sizeof cmd, "sample --m 1 --seed %d", seed);
    CHECK(run(cmd).exit_code == 0);
  }
}

TEST_CASE("json report round-trips byte-identically") {
  const std::string path = "cli_report_test.json";
  const RunResult r = run(
      "verify mimachi --m 1 --trials 5 --seed 11 --report " + path);
  CHECK(r.exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  const auto j = nlohmann::ordered_json::parse(text);
  CHECK(j["trials"] == 5);
  CHECK(j["passes"].get<int>() + j["failures"].get<int>() +
            j["errors"].get<int>() ==
        5);
  // parse -> re-serialize -> byte-equal
  CHECK(j.dump(2) + "\n" == text);
  std::remove(path.c_str());
}

TEST_CASE("config file with flag and env overrides") {
  const std::string path = "cli_config_test.cfg";
  {
    std::ofstream cfg(path);
    cfg << "# suite defaults\n";
    cfg << "trials = 4\n";
    cfg << "seed = 5\n";
    cfg << "q = 0.5\n";
  }
  RunResult r = run("verify rp-connection --config " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("trials=4") != std::string::npos);

  // flags override the file
  r = run("verify rp-connection --config " + path + " --trials 3");
  CHECK(r.out.find("trials=3") != std::string::npos);

  // environment variable overrides the default tolerance: an absurdly tight
  // tolerance makes every trial fail
  const std::string cmd = std::string("env QCONNECT_TOL=1e-30 ") +
                          QCONNECT_CLI +
                          " verify rp-connection --trials 3 --seed 5 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
    out.append(buf.data(), n);
  const int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 1);
  CHECK(out.find("failures=3") != std::string::npos);
  std::remove(path.c_str());
}
