#include "diracxp/errors.hpp"
#include "diracxp/zero_table.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

using namespace diracxp;

namespace {

ZeroTable parse(const std::string &text, bool gate = true) {
  std::istringstream in(text);
  ZeroTableOptions options;
  options.sanity_gate = gate;
  return load_zero_table(in, options);
}

} // namespace

TEST_SUITE("zero_table") {

TEST_CASE("three ordinates") {
  const auto table = parse("14.134725\n21.022040\n25.010858\n");
  REQUIRE(table.size() == 3);
  CHECK(table.ordinates[0] == 14.134725);
  CHECK(table.ordinates[2] == 25.010858);
}

TEST_CASE("empty input is a valid empty table") {
  CHECK(parse("").empty());
  CHECK(parse("# header only\n\n   \n").empty());
}

TEST_CASE("comments, blanks, CRLF and surrounding spaces") {
  const auto table = parse("# zeros\r\n\r\n  14.134725  \r\n21.022040\r\n\n# tail\n");
  REQUIRE(table.size() == 2);
  CHECK(table.ordinates[1] == 21.022040);
}

TEST_CASE("malformed line reports its position") {
  try {
    parse("14.134725\nabc\n");
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
    CHECK(e.column() >= 1);
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("14.1 trailing\n"), ParseError);
  CHECK_THROWS_AS(parse("14.1,21.0\n"), ParseError);
}

TEST_CASE("ordering and sanity gate") {
  CHECK_THROWS_AS(parse("14.5\n14.5\n"), ValidationError);
  CHECK_THROWS_AS(parse("14.5\n21.0\n20.0\n"), ValidationError);
  CHECK_THROWS_AS(parse("21.022040\n25.010858\n"), ValidationError);
  CHECK(parse("21.022040\n25.010858\n", false).size() == 2);
}

TEST_CASE("missing file names the path") {
  try {
    load_zero_table(std::filesystem::path("/nonexistent/zeros.txt"));
    FAIL("expected ValidationError");
  } catch (const ValidationError &e) {
    CHECK(std::string(e.what()).find("/nonexistent/zeros.txt") != std::string::npos);
  }
}

TEST_CASE("shipped table") {
  const auto table = load_zero_table(std::filesystem::path(DIRACXP_DATA_DIR "/zeros_100.txt"));
  REQUIRE(table.size() == 100);
  CHECK(table.ordinates.front() == doctest::Approx(14.134725141734694).epsilon(1e-15));
  CHECK(std::is_sorted(table.ordinates.begin(), table.ordinates.end()));
}

TEST_CASE("save and load round trip exactly") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> gap(1e-6, 5.0);
  ZeroTable table;
  double e = 14.1347251417346937904;
  for (int j = 0; j < 500; ++j) {
    table.ordinates.push_back(e);
    e += gap(rng);
  }
  std::stringstream io;
  save_zero_table(io, table);
  const auto back = load_zero_table(io);
  CHECK(back.ordinates == table.ordinates);
}

TEST_CASE("count_zeros") {
  const auto table = parse("14.134725\n21.022040\n25.010858\n");
  CHECK(count_zeros(table, 10.0) == 0);
  CHECK(count_zeros(table, 14.134725) == 1);
  CHECK(count_zeros(table, 21.0) == 1);
  CHECK(count_zeros(table, 1000.0) == 3);
  CHECK(count_zeros(ZeroTable{}, 50.0) == 0);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(0.0, 40.0);
  for (int j = 0; j < 1000; ++j) {
    double a = d(rng), b = d(rng);
    if (a > b)
      std::swap(a, b);
    CHECK(count_zeros(table, a) <= count_zeros(table, b));
  }
}

} // TEST_SUITE
