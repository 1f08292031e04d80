#pragma once

#include <complex>

namespace diracxp {

using Complex = std::complex<double>;

// Index pair and radial coordinate of a Whittaker-type function.
struct WhittakerParams {
  Complex k;
  Complex m;
  double u = 1.0; // must be > 0
};

namespace specfun {

// Iteration budget and truncation target shared by the series evaluators.
struct Limits {
  int max_terms = 10000;
  // Relative truncation target of the large-u asymptotic expansion. The
  // convergent power series always runs to machine precision.
  double target = 1e-12;
  // Kummer M switches from the power series to the asymptotic expansion at
  // u >= asymptotic_switch, provided the expansion reaches `target`.
  double asymptotic_switch = 40.0;
};

/// Principal branch of log Gamma(z): analytic on C minus (-inf, 0], real on
/// the positive axis, imaginary part continuous (never reduced mod 2 pi).
///
/// Throws DomainError at the poles z = 0, -1, -2, ...
Complex log_gamma(Complex z);

/// Kummer's confluent hypergeometric function M(a, b; u) for real u >= 0.
/// Dispatches between the power series and the two-term large-u expansion.
Complex kummer_m(Complex a, Complex b, double u, const Limits &limits = {});

// The two branches of kummer_m, exposed for cross-checking.
Complex kummer_m_series(Complex a, Complex b, double u, const Limits &limits = {});
// Throws ConvergenceError if the expansion cannot reach limits.target at u.
Complex kummer_m_asymptotic(Complex a, Complex b, double u,
                            const Limits &limits = {});

/// e^{-u/2} u^{m+1/2} M(m-k+1/2, 1+2m; u), with u^{m+1/2} = exp((m+1/2) ln u).
///
/// This is the function usually written M_{k,m}(u), the solution that is
/// regular at the origin. The radial problem labels it W_{k,m} and builds
/// its boundary-value solutions from the pair (k, m) = (1/2, +-iE); the
/// standard Whittaker W (irregular at the origin) is not used anywhere.
Complex whittaker_m(const WhittakerParams &p, const Limits &limits = {});

/// Riemann-Siegel theta: Im log Gamma(1/4 + iE/2) - (E/2) ln pi.
double riemann_siegel_theta(double energy);

} // namespace specfun
} // namespace diracxp
