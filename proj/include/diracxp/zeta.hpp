#pragma once

#include "diracxp/specfun.hpp"
#include "diracxp/spectrum.hpp"
#include "diracxp/zero_table.hpp"

#include <span>
#include <vector>

namespace diracxp {

// Largest |Im s| for which the Euler-Maclaurin truncation below is validated.
inline constexpr double kZetaHeightLimit = 200.0;

/// zeta(s) by Euler-Maclaurin summation: N = max(20, ceil(2|Im s|)) direct
/// terms plus eight Bernoulli tail corrections. Intended for 0 < Re s <= 3.
/// Throws RangeError for |Im s| > 200 and DomainError at s = 1.
Complex zeta(Complex s);

// zeta(1/2 + iE).
Complex zeta_critical_line(double energy);

/// S(E) = arg zeta(1/2 + iE) / pi with the argument obtained by continuous
/// variation along 2 -> 2 + iE -> 1/2 + iE, the convention under which
/// N(E) = theta(E)/pi + 1 + S(E) holds. S(0+) = -1 because zeta(1/2) < 0.
/// Requires 0 < E <= 200; throws NearZeroError when |zeta(1/2 + iE)| < 1e-12.
double s_fluctuation(double energy);

// theta(E)/pi + 1.
double n_smooth(double energy);

struct CountingSample {
  double energy = 0.0;
  double n_model = 0.0;  // counting_model
  double n_smooth = 0.0; // theta/pi + 1
  double s_fluct = 0.0;  // S(E)
  long n_table = 0;      // tabulated ordinates <= E
};

// One sample per grid energy, in grid order.
std::vector<CountingSample> compare_counting(const SpectralConfig &config,
                                             const ZeroTable &table,
                                             std::span<const double> e_grid);

} // namespace diracxp
