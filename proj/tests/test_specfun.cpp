#include "diracxp/errors.hpp"
#include "diracxp/specfun.hpp"

#include <boost/multiprecision/cpp_complex.hpp>
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace diracxp;
using std::numbers::pi;

namespace {

using BigComplex = boost::multiprecision::cpp_complex_50;

// Power series of M(a, b; u) at 50 digits, summed until the terms vanish.
BigComplex big_kummer(Complex a, Complex b, double u) {
  const BigComplex ba(a.real(), a.imag());
  const BigComplex bb(b.real(), b.imag());
  const BigComplex bu(u, 0);
  BigComplex term(1, 0);
  BigComplex sum(1, 0);
  for (int n = 0; n < 2000; ++n) {
    term *= (ba + n) * bu / ((bb + n) * (n + 1));
    sum += term;
    if (abs(term) < 1e-45 * abs(sum) && n > 10)
      break;
  }
  return sum;
}

Complex to_double(const BigComplex &z) {
  return {z.real().convert_to<double>(), z.imag().convert_to<double>()};
}

Complex big_whittaker(Complex k, Complex m, double u) {
  const BigComplex bm(m.real(), m.imag());
  const BigComplex power = exp((bm + BigComplex(0.5, 0)) * log(BigComplex(u, 0)) -
                               BigComplex(u / 2, 0));
  return to_double(power * big_kummer(m - k + 0.5, 1.0 + 2.0 * m, u));
}

// Large-E expansion of theta.
double stirling_theta(double e) {
  return 0.5 * e * std::log(e / (2.0 * pi)) - 0.5 * e - pi / 8.0 + 1.0 / (48.0 * e) +
         7.0 / (5760.0 * std::pow(e, 3)) + 31.0 / (80640.0 * std::pow(e, 5)) +
         381.0 / (1433600.0 * std::pow(e, 7));
}

double rel(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

} // namespace

TEST_SUITE("specfun") {

TEST_CASE("log_gamma at simple points") {
  CHECK(specfun::log_gamma(1.0) == Complex(0.0, 0.0));
  CHECK(specfun::log_gamma(2.0) == Complex(0.0, 0.0));
  CHECK(specfun::log_gamma(0.5).real() == doctest::Approx(0.5723649429247001).epsilon(1e-14));
  CHECK(std::abs(specfun::log_gamma(0.5).imag()) < 1e-15);
  CHECK(specfun::log_gamma(10.0).real() == doctest::Approx(std::log(362880.0)).epsilon(1e-15));
}

TEST_CASE("log_gamma recurrence at 3+4i") {
  const Complex z(3.0, 4.0);
  const Complex step = specfun::log_gamma(z + 1.0) - specfun::log_gamma(z) - std::log(z);
  CHECK(std::abs(step) < 1e-12);
}

TEST_CASE("log_gamma against 30-digit reference values") {
  CHECK(rel(specfun::log_gamma({3.0, 4.0}),
            {-1.7566267846037841105, 4.7426644380346579282}) < 1e-14);
  // Imaginary part is the continuous branch, not reduced into (-pi, pi].
  CHECK(rel(specfun::log_gamma({-7.3, 2.1}),
            {-13.61622165832649934, -20.164590466665879755}) < 1e-13);
  CHECK(rel(specfun::log_gamma({0.25, 100.0}),
            {-157.31198591151980437, 360.12442368392899024}) < 1e-14);
}

TEST_CASE("log_gamma poles and conjugation") {
  CHECK_THROWS_AS(specfun::log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(specfun::log_gamma(-3.0), DomainError);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-15.0, 15.0);
  for (int j = 0; j < 100; ++j) {
    const Complex z(d(rng), d(rng));
    if (std::abs(z.imag()) < 0.1)
      continue;
    CHECK(std::abs(specfun::log_gamma(std::conj(z)) - std::conj(specfun::log_gamma(z))) <
          1e-11 * (1.0 + std::abs(specfun::log_gamma(z))));
  }
}

TEST_CASE("log_gamma reflection and duplication on random points") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> radius(0.0, 20.0), angle(-pi, pi);
  int checked = 0;
  while (checked < 100) {
    const Complex z = std::polar(radius(rng), angle(rng));
    if (std::abs(z.imag()) < 0.1 && std::abs(2.0 * z.real() - std::round(2.0 * z.real())) < 0.2)
      continue;
    ++checked;
    const Complex refl = std::exp(specfun::log_gamma(z) + specfun::log_gamma(1.0 - z)) *
                         std::sin(pi * z) / pi;
    CHECK(std::abs(refl - 1.0) < 1e-10);
    const Complex dup = std::exp(specfun::log_gamma(z) + specfun::log_gamma(z + 0.5) -
                                 (1.0 - 2.0 * z) * std::log(2.0) - 0.5 * std::log(pi) -
                                 specfun::log_gamma(2.0 * z));
    CHECK(std::abs(dup - 1.0) < 1e-10);
  }
}

TEST_CASE("kummer_m elementary identities") {
  CHECK(specfun::kummer_m({0.3, 2.0}, {1.5, -1.0}, 0.0) == Complex(1.0, 0.0));
  const Complex a(0.75, 1.0);
  CHECK(rel(specfun::kummer_m(a, a, 2.0), std::exp(2.0)) < 1e-14);
  CHECK(rel(specfun::kummer_m(0.0, {1.0, 3.0}, 25.0), 1.0) < 1e-15);
  CHECK_THROWS_AS(specfun::kummer_m(1.0, -2.0, 1.0), DomainError);
}

TEST_CASE("kummer_m branches agree in the overlap window") {
  const Complex a(0.25, 3.0), b(1.0, 6.0);
  const Complex want(9583056449766796518.7, 1571628772450463759.0);
  CHECK(rel(specfun::kummer_m(a, b, 50.0), want) < 1e-12);
  CHECK(rel(specfun::kummer_m_series(a, b, 50.0), want) < 1e-12);
  CHECK(rel(specfun::kummer_m_asymptotic(a, b, 50.0), want) < 1e-8);
  CHECK(rel(specfun::kummer_m(a, b, 10.0), {81.274260921713447199, -373.39584108333422302}) <
        1e-13);
}

TEST_CASE("kummer_m matches a 50-digit series") {
  for (double u : {0.5, 3.0, 12.0, 30.0, 45.0}) {
    const Complex a(0.5, -2.0), b(1.0, -4.0);
    CHECK(rel(specfun::kummer_m(a, b, u), to_double(big_kummer(a, b, u))) < 1e-11);
  }
}

TEST_CASE("kummer_m asymptotic branch reports stalls") {
  // Large indices against small u: the expansion never gets close.
  CHECK_THROWS_AS(specfun::kummer_m_asymptotic({0.25, 30.0}, {1.0, 60.0}, 5.0),
                  ConvergenceError);
  CHECK_THROWS_AS(specfun::kummer_m_asymptotic(0.5, 1.0, -1.0), DomainError);
}

TEST_CASE("whittaker_m small-u limit") {
  const double e = 5.0, u = 1e-6;
  const Complex value = specfun::whittaker_m({0.5, {0.0, e}, u});
  const Complex power = std::exp(Complex(0.5, e) * std::log(u));
  CHECK(std::abs(value / power - 1.0) < 1e-5);
}

TEST_CASE("whittaker_m closed values") {
  CHECK(rel(specfun::whittaker_m({0.5, 0.0, 1.0}), std::exp(-0.5)) < 1e-15);
  const Complex want(-1.2124113728340102538, 1.294276185431477049);
  const Complex got = specfun::whittaker_m({0.5, {0.0, 2.0}, 3.0});
  CHECK(rel(got, want) < 1e-11);
  CHECK(rel(got, big_whittaker(0.5, {0.0, 2.0}, 3.0)) < 1e-11);
}

TEST_CASE("whittaker_m conjugate pair for real arguments") {
  for (double u : {0.01, 1.0, 7.5, 30.0, 55.0}) {
    const Complex plus = specfun::whittaker_m({0.5, {0.0, 7.0}, u});
    const Complex minus = specfun::whittaker_m({0.5, {0.0, -7.0}, u});
    CHECK(std::abs(plus - std::conj(minus)) < 1e-11 * std::abs(plus));
    CHECK(rel(plus, big_whittaker(0.5, {0.0, 7.0}, u)) < 1e-10);
  }
}

TEST_CASE("whittaker_m domain errors") {
  CHECK_THROWS_AS(specfun::whittaker_m({0.5, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(specfun::whittaker_m({0.5, -1.0, 1.0}), DomainError);
}

TEST_CASE("riemann_siegel_theta") {
  CHECK(specfun::riemann_siegel_theta(0.0) == 0.0);
  CHECK(specfun::riemann_siegel_theta(-17.3) == doctest::Approx(-specfun::riemann_siegel_theta(17.3)).epsilon(1e-15));
  CHECK(specfun::riemann_siegel_theta(17.3) == doctest::Approx(-0.28051999424949899148).epsilon(1e-13));
  CHECK(std::abs(specfun::riemann_siegel_theta(50.0) - stirling_theta(50.0)) < 1e-8);
  CHECK(std::abs(specfun::riemann_siegel_theta(50.0) - 26.461366070161409647) < 1e-12);
  CHECK(std::abs(specfun::riemann_siegel_theta(200.0) - stirling_theta(200.0)) < 1e-10);
  CHECK(std::abs(specfun::riemann_siegel_theta(200.0) - 245.65143509898897282) < 1e-11);
}

} // TEST_SUITE
