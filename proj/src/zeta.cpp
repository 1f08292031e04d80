#include "diracxp/zeta.hpp"

#include "diracxp/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace diracxp {
namespace {

// B_{2k} / (2k)!, k = 1..8.
constexpr std::array<double, 8> kTailCoeff = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
};

constexpr double kNearZero = 1e-12;
constexpr double kMaxArgStep = 0.3; // radians per accepted step along the path
constexpr double kMaxPathStep = 0.05;
constexpr double kMinPathStep = 1e-15;

std::string show(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

} // namespace

Complex zeta(Complex s) {
  if (!(std::abs(s.imag()) <= kZetaHeightLimit))
    throw RangeError("zeta: |Im s| = " + show(std::abs(s.imag())) +
                     " exceeds the validated height " + show(kZetaHeightLimit));
  if (s == Complex(1.0))
    throw DomainError("zeta: pole at s = 1");

  const int terms = std::max(20, int(std::ceil(2.0 * std::abs(s.imag()))));
  const double n_cut = double(terms);

  Complex sum = 0.0;
  for (int n = terms - 1; n >= 1; --n)
    sum += std::exp(-s * std::log(double(n)));

  const Complex n_pow = std::exp(-s * std::log(n_cut)); // N^{-s}
  sum += n_pow * n_cut / (s - 1.0) + 0.5 * n_pow;

  // sum_k B_{2k}/(2k)! s (s+1) ... (s+2k-2) N^{-s-2k+1}
  Complex rising = s;
  Complex power = n_pow / n_cut;
  for (std::size_t k = 0; k < kTailCoeff.size(); ++k) {
    sum += kTailCoeff[k] * rising * power;
    const double j = 2.0 * double(k) + 1.0;
    rising *= (s + j) * (s + j + 1.0);
    power /= n_cut * n_cut;
  }
  return sum;
}

Complex zeta_critical_line(double energy) { return zeta(Complex(0.5, energy)); }

double s_fluctuation(double energy) {
  if (!(energy > 0.0 && energy <= kZetaHeightLimit))
    throw RangeError("s_fluctuation: need 0 < E <= " + show(kZetaHeightLimit) +
                     " (got " + show(energy) + ")");
  const Complex end = zeta(Complex(0.5, energy));
  if (std::abs(end) < kNearZero)
    throw NearZeroError("s_fluctuation: |zeta(1/2 + iE)| = " + show(std::abs(end)) +
                        " at E = " + show(energy) + "; arg is undefined at a zero");

  // Re zeta > 0 on Re s >= 2, so the principal arg starts the continuation.
  double sigma = 2.0;
  Complex current = zeta(Complex(sigma, energy));
  double arg = std::arg(current);
  double step = kMaxPathStep;
  while (sigma > 0.5) {
    const double next = std::max(0.5, sigma - step);
    const Complex value = next == 0.5 ? end : zeta(Complex(next, energy));
    const double delta = std::arg(value / current);
    if (std::abs(delta) > kMaxArgStep) {
      if (step <= kMinPathStep)
        throw ConvergenceError("s_fluctuation: argument tracking stalled at sigma = " +
                                   show(sigma),
                               std::abs(delta));
      step *= 0.5;
      continue;
    }
    arg += delta;
    sigma = next;
    current = value;
    step = std::min(kMaxPathStep, 1.5 * step);
  }
  return arg / std::numbers::pi;
}

double n_smooth(double energy) {
  return specfun::riemann_siegel_theta(energy) / std::numbers::pi + 1.0;
}

std::vector<CountingSample> compare_counting(const SpectralConfig &config,
                                             const ZeroTable &table,
                                             std::span<const double> e_grid) {
  std::vector<CountingSample> samples;
  samples.reserve(e_grid.size());
  for (double e : e_grid) {
    CountingSample sample;
    sample.energy = e;
    sample.n_model = counting_model(e, config);
    sample.n_smooth = n_smooth(e);
    sample.s_fluct = s_fluctuation(e);
    sample.n_table = long(count_zeros(table, e));
    samples.push_back(sample);
  }
  return samples;
}

} // namespace diracxp
