#pragma once

#include "diracxp/errors.hpp"
#include "diracxp/specfun.hpp"
#include "diracxp/zero_table.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace diracxp {

// Which quantization condition produced (or should produce) an eigenvalue.
enum class Variant {
  Exact,      // full Whittaker ratio at the cutoff
  Asymptotic, // small-cutoff limit written with Gamma ratios
  Shooting,   // direct ODE integration (ode_oracle)
};

std::string_view to_string(Variant v);
// Accepts "exact" and "asymptotic"; throws ConfigError otherwise.
Variant parse_variant(std::string_view text);

struct SpectralConfig {
  double u0 = 1e-3;  // dimensionless cutoff, 0 < u0 < 8
  double e_min = 0.0;
  double e_max = 50.0;
  double tol_e = 1e-9;
  Variant variant = Variant::Asymptotic;
  double scan_step = 0.05;
  // Worker threads for bracket refinement. Results do not depend on it.
  unsigned threads = 1;

  // Throws ConfigError naming the violated constraint.
  void validate() const;
};

struct EigenvalueRecord {
  int index = 0;       // k >= 1, spectral phase at E_k is pi (k - 1/2)
  double energy = 0.0;
  double residual = 0.0; // |phase(E_k) - pi (k - 1/2)|
  Variant variant = Variant::Asymptotic;
};

// Raised when bracketing or refinement fails part way; carries what was
// solved before the failure.
class EnumerationError : public Error {
public:
  EnumerationError(const std::string &what, std::vector<EigenvalueRecord> partial)
      : Error(what), partial_(std::move(partial)) {}
  const std::vector<EigenvalueRecord> &partial() const noexcept { return partial_; }

private:
  std::vector<EigenvalueRecord> partial_;
};

// Fourier mode on the cylinder: psi ~ exp(i (n + alpha) y / R).
struct CylinderMode {
  int n = 0;
  double alpha = 0.0; // [0, 1)
  double radius = 1.0;
};

// x = R u / (2 (n + alpha)). Throws DomainError for n + alpha = 0 or u <= 0.
double mode_to_radial(const CylinderMode &mode, double u);
// Inverse map u = 2 (n + alpha) x / R.
double radial_to_mode(const CylinderMode &mode, double x);

// Cutoff below which the asymptotic spectral phase is strictly increasing
// on [0, inf): e^{-gamma_Euler}.
double monotone_cutoff_bound();

/// Continuous arg of W_{1/2,-iE}(u0)/W_{1/2,+iE}(u0) minus the continuous
/// arg of [Gamma(1-2iE) Gamma(iE)] / [Gamma(1+2iE) Gamma(-iE)].
/// Eigenvalues are its zeros mod 2 pi. Both ratios are checked to be
/// unimodular (ConsistencyError beyond 1e-8).
double phase_exact(double energy, double u0);

/// E ln(8/u0) + Im log Gamma(1/4 + iE/2) + Im log Gamma(3/4 + iE/2).
/// Eigenvalues solve phase = pi (k - 1/2), k = 1, 2, ...
double phase_asymptotic(double energy, double u0);

// Level function of either variant, normalised so that both vanish at E = 0
// and eigenvalue k sits at pi (k - 1/2). For Exact this is
// (phase_exact - pi) / 2.
double spectral_phase(double energy, double u0, Variant variant);

// Moduli of the two sides of the exact condition (both 1 for real E).
struct ExactConditionModuli {
  double lhs;
  double rhs;
};
ExactConditionModuli exact_condition_moduli(double energy, double u0);

// The small-cutoff condition written two ways, each normalised to equal 1
// exactly at an eigenvalue:
//   gamma form: -(u0/8)^{-2iE} G(E),
//     G = Gamma(1/4+iE/2) Gamma(3/4+iE/2) / [Gamma(1/4-iE/2) Gamma(3/4-iE/2)]
//   theta form: -(u0/8)^{-2iE} e^{2i theta(E) + iE ln pi}
//                 Gamma(3/4+iE/2) / Gamma(3/4-iE/2)
Complex condition_gamma_form(double energy, double u0);
Complex condition_theta_form(double energy, double u0);

/// All eigenvalues in (e_min, e_max], ascending and indexed by their global
/// ordinal k. Throws MonotonicityError if the phase decreases between scan
/// points and EnumerationError if refinement of a bracket fails.
std::vector<EigenvalueRecord> eigenvalues(const SpectralConfig &config);

// The first `count` eigenvalues (k = 1..count) at the given cutoff.
std::vector<EigenvalueRecord> first_eigenvalues(double u0, int count,
                                                Variant variant, double tol_e,
                                                double scan_step = 0.05);

/// Smooth counting function phase(E)/pi + 1/2; floor() of it counts the
/// eigenvalues at or below E.
double counting_model(double energy, const SpectralConfig &config);

struct CalibrationOptions {
  Variant variant = Variant::Asymptotic;
  double tol_e = 1e-13;
  double log_u0_min = -27.631021115928547; // ln 1e-12
  double log_u0_max = 0.0;                 // ln 1
  int grid_points = 41;
  double log_u0_tol = 1e-10;
};

struct CalibrationResult {
  double u0 = 0.0;
  double objective = 0.0; // sum of squared eigenvalue - target differences
  double rms = 0.0;
  std::vector<double> eigenvalues;
  // Set when the objective is not unimodal on the bracket or the optimum
  // sits on its edge / the monotonicity boundary.
  std::optional<std::string> warning;
};

/// Least-squares fit of the cutoff: the first `count` eigenvalues against
/// the first `count` targets. Golden-section search on ln u0 after a coarse
/// scan that locates the basin. Deterministic.
CalibrationResult calibrate_u0(std::span<const double> targets, int count,
                               const CalibrationOptions &options = {});
CalibrationResult calibrate_u0(const ZeroTable &targets, int count,
                               const CalibrationOptions &options = {});

} // namespace diracxp
