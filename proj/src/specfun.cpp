#include "diracxp/specfun.hpp"

#include "diracxp/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

namespace diracxp::specfun {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

// Below this modulus log_gamma shifts the argument upward before applying
// the Stirling series.
constexpr double kStirlingRadius = 15.0;

// B_{2k} / (2k (2k-1)), k = 1..12.
constexpr std::array<double, 12> kStirlingCoeff = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    854513.0 / 63756.0,
    -236364091.0 / 27492000.0,
};

std::string show(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag())
     << "i";
  return os.str();
}

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 &&
         std::floor(z.real()) == z.real();
}

bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

Complex require_finite(Complex z, const char *where) {
  if (!is_finite(z))
    throw RangeError(std::string(where) + ": result overflows double precision");
  return z;
}

void require_admissible_b(Complex b) {
  if (is_nonpositive_integer(b))
    throw DomainError("kummer_m: b = " + show(b) +
                      " is a non-positive integer (pole of the series)");
}

struct PartialSum {
  Complex sum;
  double error; // magnitude of the first omitted term
};

// sum_s (p)_s (q)_s / (s! x^s), truncated at its smallest term.
PartialSum asymptotic_sum(Complex p, Complex q, double x, int max_terms) {
  Complex sum = 1.0;
  Complex term = 1.0;
  for (int s = 0; s < max_terms; ++s) {
    const Complex next = term * (p + double(s)) * (q + double(s)) /
                         (double(s + 1) * x);
    if (next == 0.0)
      return {sum, 0.0};
    if (std::abs(next) >= std::abs(term))
      return {sum, std::abs(term)};
    sum += next;
    term = next;
    if (std::abs(term) <= kEps * std::abs(sum))
      return {sum, std::abs(term)};
  }
  return {sum, std::abs(term)};
}

} // namespace

Complex log_gamma(Complex z) {
  if (!is_finite(z))
    throw DomainError("log_gamma: non-finite argument");
  if (is_nonpositive_integer(z))
    throw DomainError("log_gamma: z = " + show(z) + " is a pole of Gamma");
  if (z == Complex(1.0) || z == Complex(2.0))
    return 0.0;

  // log Gamma(z) = log Gamma(z + n) - sum_{j<n} log(z + j), valid with
  // principal logs everywhere off the cut.
  Complex shift = 0.0;
  Complex w = z;
  while (w.real() < 0.0 || std::abs(w) < kStirlingRadius) {
    shift += std::log(w);
    w += 1.0;
  }

  const Complex inv = 1.0 / w;
  const Complex inv2 = inv * inv;
  Complex series = kStirlingCoeff.back();
  for (auto it = kStirlingCoeff.rbegin() + 1; it != kStirlingCoeff.rend(); ++it)
    series = series * inv2 + *it;
  series *= inv;

  return (w - 0.5) * std::log(w) - w + kHalfLog2Pi + series - shift;
}

Complex kummer_m_series(Complex a, Complex b, double u, const Limits &limits) {
  require_admissible_b(b);
  if (!(u >= 0.0))
    throw DomainError("kummer_m: u must be >= 0");
  if (u == 0.0)
    return 1.0;

  Complex sum = 1.0;
  Complex term = 1.0;
  for (int n = 0; n < limits.max_terms; ++n) {
    const Complex ratio = (a + double(n)) / (b + double(n)) * (u / double(n + 1));
    term *= ratio;
    if (term == 0.0)
      return sum; // a is a non-positive integer: M is a polynomial
    sum += term;
    if (std::abs(term) <= kEps * std::abs(sum) && std::abs(ratio) < 0.5)
      return require_finite(sum, "kummer_m");
  }
  throw ConvergenceError("kummer_m: power series did not converge within " +
                             std::to_string(limits.max_terms) + " terms",
                         std::abs(term) / std::abs(sum));
}

Complex kummer_m_asymptotic(Complex a, Complex b, double u,
                            const Limits &limits) {
  require_admissible_b(b);
  if (!(u > 0.0))
    throw DomainError("kummer_m: asymptotic expansion needs u > 0");

  using std::numbers::pi;
  const Complex i(0.0, 1.0);
  const double log_u = std::log(u);
  const Complex log_gamma_b = log_gamma(b);

  // Dominant part: Gamma(b)/Gamma(a) e^u u^{a-b} sum (b-a)_s (1-a)_s / (s! u^s).
  Complex dominant = 0.0;
  double error = 0.0;
  if (!is_nonpositive_integer(a)) {
    const auto part = asymptotic_sum(b - a, 1.0 - a, u, limits.max_terms);
    const Complex prefactor =
        std::exp(log_gamma_b - log_gamma(a) + u + (a - b) * log_u);
    dominant = prefactor * part.sum;
    error += std::abs(prefactor) * part.error;
  }
  // Recessive part: Gamma(b)/Gamma(b-a) e^{i pi a} u^{-a} sum (a)_s (a-b+1)_s / (s! (-u)^s).
  Complex recessive = 0.0;
  if (!is_nonpositive_integer(b - a)) {
    const auto part = asymptotic_sum(a, a - b + 1.0, -u, limits.max_terms);
    const Complex prefactor =
        std::exp(log_gamma_b - log_gamma(b - a) + i * pi * a - a * log_u);
    recessive = prefactor * part.sum;
    error += std::abs(prefactor) * part.error;
  }

  const Complex value = require_finite(dominant + recessive, "kummer_m");
  const double relative = error / std::abs(value);
  if (!(relative <= limits.target))
    throw ConvergenceError("kummer_m: asymptotic expansion stalls above target at u = " +
                               std::to_string(u),
                           relative);
  return value;
}

Complex kummer_m(Complex a, Complex b, double u, const Limits &limits) {
  if (u >= limits.asymptotic_switch) {
    try {
      return kummer_m_asymptotic(a, b, u, limits);
    } catch (const ConvergenceError &) {
      // Indices too large relative to u; the power series still converges.
    }
  }
  return kummer_m_series(a, b, u, limits);
}

Complex whittaker_m(const WhittakerParams &p, const Limits &limits) {
  if (!(p.u > 0.0))
    throw DomainError("whittaker_m: u must be > 0");
  const Complex b = 1.0 + 2.0 * p.m;
  if (is_nonpositive_integer(b))
    throw DomainError("whittaker_m: 1 + 2m = " + show(b) +
                      " is a non-positive integer");
  const Complex a = p.m - p.k + 0.5;
  const Complex m_value = kummer_m(a, b, p.u, limits);
  const Complex prefactor = std::exp(-0.5 * p.u + (p.m + 0.5) * std::log(p.u));
  return require_finite(prefactor * m_value, "whittaker_m");
}

double riemann_siegel_theta(double energy) {
  return log_gamma(Complex(0.25, 0.5 * energy)).imag() -
         0.5 * energy * std::log(std::numbers::pi);
}

} // namespace diracxp::specfun
