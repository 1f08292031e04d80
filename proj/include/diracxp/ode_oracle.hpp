#pragma once

#include "diracxp/specfun.hpp"

#include <limits>
#include <span>
#include <vector>

namespace diracxp {

// Samples of the radial amplitude phi(u) and its slope on the integrator's
// adaptive grid. For real E the Dirichlet problem has real solutions, so
// the samples are stored as doubles.
struct RadialSolution {
  std::vector<double> u;
  std::vector<double> phi;
  std::vector<double> dphi;
  double energy = 0.0;
};

// q(u) in phi'' + q(u) phi = 0: -1/4 + 1/(2u) + (E^2 + 1/4)/u^2.
double whittaker_potential(double energy, double u);

/// Integrates phi'' + q phi = 0 from u0 to u_max with phi(u0) = 0,
/// phi'(u0) = 1, using an adaptive embedded Runge-Kutta-Fehlberg 7(8)
/// pair with relative error control `rel_tol`. `max_step` caps the step
/// (useful when the samples are post-processed by finite differences).
///
/// Throws IntegrationError when the step size underflows or the step budget
/// is exhausted.
RadialSolution integrate_whittaker(
    double energy, double u0, double u_max, double rel_tol,
    double max_step = std::numeric_limits<double>::infinity());

struct ShootingOptions {
  double u_max = 60.0;
  double rel_tol = 1e-11; // integrator tolerance
  double e_tol = 1e-10;   // bisection width in E
};

// Coefficient of the growing branch e^{u/2} u^{-1/2} estimated at u_max:
// phi(u_max) e^{-u_max/2} sqrt(u_max). Changes sign at every eigenvalue.
double shooting_functional(double energy, double u0, double u_max,
                           double rel_tol);

/// Bisection on the sign of shooting_functional inside [e_lo, e_hi].
/// Throws BracketError for an empty bracket or when the functional has the
/// same sign at both ends.
double shoot_eigenvalue(double e_lo, double e_hi, double u0,
                        const ShootingOptions &options = {});

// Scans the shooting functional upward from e_start in steps of scan_step
// and refines the first `count` sign changes.
std::vector<double> shooting_eigenvalues(double u0, int count,
                                         const ShootingOptions &options = {},
                                         double scan_step = 0.05,
                                         double e_start = 0.01);

// Number of sign changes of the shooting functional sampled on `energies`.
int shooting_sign_changes(std::span<const double> energies, double u0,
                          const ShootingOptions &options = {});

// A [W_{1/2,-iE}(u0) W_{1/2,+iE}(u) - W_{1/2,+iE}(u0) W_{1/2,-iE}(u)] with A = 1,
// W built from specfun::whittaker_m.
Complex closed_form_solution(double energy, double u0, double u);

struct ClosedFormCheck {
  // max over samples of |phi'' + q phi| / (|phi''| + V(u) (|phi| + u |phi'|)),
  // V = 1/4 + 1/(2u) + (E^2 + 1/4)/u^2, derivatives by central differences.
  double max_residual = 0.0;
  // |phi(u0)| / (|W_-(u0)| |W_+(u0)|).
  double boundary_value = 0.0;
};

/// Checks that the closed form solves the radial equation at every sample.
/// Throws ConsistencyError if the boundary value exceeds 1e-12.
ClosedFormCheck residual_closed_form(double energy, double u0,
                                     std::span<const double> u_samples);

} // namespace diracxp
