#include "diracxp/cli.hpp"
#include "diracxp/errors.hpp"
#include "diracxp/spectrum.hpp"

#include <doctest.h>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

using namespace diracxp;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "diracxp");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string &text) {
  return std::size_t(std::count(text.begin(), text.end(), '\n'));
}

std::string slurp(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

const std::string kZeros = DIRACXP_DATA_DIR "/zeros_100.txt";

} // namespace

TEST_SUITE("cli") {

TEST_CASE("format_double round trips") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> d(-1e6, 1e6);
  for (int j = 0; j < 1000; ++j) {
    const double x = d(rng) * std::pow(10.0, (j % 40) - 20);
    const std::string text = cli::format_double(x);
    double back = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), back);
    CHECK(back == x);
  }
  CHECK(cli::format_complex(0.0, 0.0) == "0+0i");
  CHECK(cli::format_complex(1.5, -2.0) == "1.5-2i");
}

TEST_CASE("energy grid") {
  CHECK(cli::parse_energy_grid("10:100:10").size() == 10);
  CHECK(cli::parse_energy_grid("0:1:0.1").size() == 11);
  CHECK(cli::parse_energy_grid("5:5:1").size() == 1);
  CHECK_THROWS_AS(cli::parse_energy_grid("10:100"), ConfigError);
  CHECK_THROWS_AS(cli::parse_energy_grid("10:100:0"), ConfigError);
  CHECK_THROWS_AS(cli::parse_energy_grid("100:10:1"), ConfigError);
  CHECK_THROWS_AS(cli::parse_energy_grid("a:b:c"), ConfigError);
}

TEST_CASE("csv quoting") {
  CHECK(cli::csv_field("plain") == "plain");
  CHECK(cli::csv_field("a,b") == "\"a,b\"");
  CHECK(cli::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("eigenvalues row count follows the counting function") {
  const auto r = invoke({"eigenvalues", "--u0", "1e-3", "--e-max", "30", "--variant", "asymptotic"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("index,energy,residual,variant\n", 0) == 0);
  const double expected = std::floor(phase_asymptotic(30.0, 1e-3) / std::numbers::pi + 0.5);
  CHECK(lines(r.out) - 1 == std::size_t(expected));
  CHECK(r.err.find("\"command\":\"eigenvalues\"") != std::string::npos);
}

TEST_CASE("eigenvalues configuration errors exit 2") {
  const auto r = invoke({"eigenvalues", "--u0", "9"});
  CHECK(r.code == 2);
  CHECK(r.err.find("u0 < 8") != std::string::npos);
  CHECK(invoke({"eigenvalues", "--variant", "shooting"}).code == 2);
  CHECK(invoke({"eigenvalues", "--u0", "abc"}).code == 2);
  CHECK(invoke({"eigenvalues", "--bogus"}).code == 2);
  CHECK(invoke({}).code == 2);
}

TEST_CASE("numerical failure exits 3") {
  const auto r = invoke({"eigenvalues", "--u0", "0.7", "--e-max", "5"});
  CHECK(r.code == 3);
  CHECK(r.err.find("numerical failure") != std::string::npos);
}

TEST_CASE("help and version") {
  CHECK(invoke({"--help"}).code == 0);
  const auto v = invoke({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out == "0.1.0\n");
}

TEST_CASE("eigenvalues output files are deterministic") {
  const auto dir = std::filesystem::temp_directory_path() / "diracxp_cli_test";
  std::filesystem::create_directories(dir);
  const auto a = dir / "a.csv", b = dir / "b.csv";
  for (const std::string variant : {"exact", "asymptotic"}) {
    REQUIRE(invoke({"eigenvalues", "--e-max", "20", "--variant", variant, "--out", a.string()})
                .code == 0);
    REQUIRE(invoke({"eigenvalues", "--e-max", "20", "--variant", variant, "--threads", "3",
                    "--out", b.string()})
                .code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
    const auto manifest = nlohmann::json::parse(slurp(a.string() + ".manifest.json"));
    CHECK(manifest["parameters"]["variant"] == variant);
    CHECK(manifest["schema_version"] == cli::kSchemaVersion);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("eigenvalues json embeds the manifest") {
  const auto r = invoke({"eigenvalues", "--e-max", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["manifest"]["command"] == "eigenvalues");
  CHECK(doc["manifest"]["parameters"]["u0"] == "0.001");
  CHECK(doc["eigenvalues"].size() == 5);
  CHECK(doc["eigenvalues"][0]["index"] == 1);
  CHECK(doc["eigenvalues"][0]["energy"].get<double>() == doctest::Approx(0.2425401240707757));
}

TEST_CASE("compare with calibration") {
  const auto r = invoke({"compare", "--zeros", kZeros, "--calibrate", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("energy,n_model,n_smooth,s_fluct,n_table\n", 0) == 0);
  CHECK(lines(r.out) == 11);
  CHECK(r.err.find("rms_model_minus_table=") != std::string::npos);
  CHECK(r.err.find("rms_smooth_plus_s_minus_table=") != std::string::npos);
}

TEST_CASE("compare json summary") {
  const auto r = invoke({"compare", "--zeros", kZeros, "--e-grid", "10:100:10", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["samples"].size() == 10);
  CHECK(doc["summary"]["rounding_mismatches"] == 0);
  CHECK(doc["summary"]["rms_smooth_plus_s_minus_table"].get<double>() < 1e-8);
  CHECK(doc["manifest"]["parameters"]["zeros"] == kZeros);
}

TEST_CASE("compare zero table errors") {
  const auto missing = invoke({"compare", "--zeros", "/no/such/zeros.txt"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("/no/such/zeros.txt") != std::string::npos);

  ::unsetenv("DIRACXP_ZEROS");
  CHECK(invoke({"compare"}).code == 2);
  ::setenv("DIRACXP_ZEROS", kZeros.c_str(), 1);
  CHECK(invoke({"compare", "--e-grid", "10:20:5"}).code == 0);
  ::unsetenv("DIRACXP_ZEROS");

  CHECK(invoke({"compare", "--zeros", kZeros, "--e-grid", "10:x:1"}).code == 2);
}

TEST_CASE("verify passes by default and fails on an impossible tolerance") {
  const auto ok = invoke({"verify"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("all checks passed") != std::string::npos);

  const auto bad = invoke({"verify", "--tol", "1e-30"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL gamma_reflection") != std::string::npos);

  const auto json = invoke({"verify", "--json"});
  REQUIRE(json.code == 0);
  const auto doc = nlohmann::json::parse(json.out);
  CHECK(doc["passed"] == true);
  REQUIRE(doc["checks"].size() >= 10);
  for (const auto &check : doc["checks"]) {
    CHECK(check["value"].is_number());
    CHECK(check["tolerance"].is_number());
  }
}

TEST_CASE("specfun subcommands") {
  CHECK(invoke({"specfun", "theta", "--e", "0"}).out == "0\n");
  CHECK(invoke({"specfun", "loggamma", "--re", "1", "--im", "0"}).out == "0+0i\n");

  const auto w = invoke({"specfun", "--json", "whittaker", "--k", "0.5", "--m-im", "5", "--u", "1e-6"});
  REQUIRE(w.code == 0);
  const double modulus = nlohmann::json::parse(w.out)["abs"].get<double>();
  CHECK(std::abs(modulus / std::sqrt(1e-6) - 1.0) < 0.01);

  const auto k = invoke({"specfun", "kummer", "--a-re", "0.75", "--a-im", "1", "--b-re", "0.75",
                         "--b-im", "1", "--u", "2"});
  REQUIRE(k.code == 0);
  CHECK(k.out.rfind("7.38905609893", 0) == 0);

  CHECK(invoke({"specfun", "loggamma", "--re", "0"}).code == 3);
  CHECK(invoke({"specfun"}).code == 2);
}

} // TEST_SUITE
