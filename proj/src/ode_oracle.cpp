#include "diracxp/ode_oracle.hpp"

#include "diracxp/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <sstream>
#include <string>

namespace diracxp {
namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;

constexpr long kMaxSteps = 2'000'000;
constexpr double kBoundaryTol = 1e-12;

std::string show(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Drives a controlled RKF78 stepper from u0 to u_max and reports every
// accepted step to `observe(u, state)`.
template <class Observer>
State integrate(double energy, double u0, double u_max, double rel_tol,
                double max_step, Observer &&observe) {
  if (!(u0 > 0.0 && u0 < u_max))
    throw IntegrationError("integrate_whittaker: need 0 < u0 < u_max (got u0 = " +
                           show(u0) + ", u_max = " + show(u_max) + ")");
  if (!(rel_tol > 0.0))
    throw IntegrationError("integrate_whittaker: rel_tol must be > 0");
  if (!(max_step > 0.0))
    throw IntegrationError("integrate_whittaker: max_step must be > 0");

  const double e2 = energy * energy + 0.25;
  const auto rhs = [e2](const State &x, State &dxdu, double u) {
    dxdu[0] = x[1];
    dxdu[1] = -(-0.25 + 0.5 / u + e2 / (u * u)) * x[0];
  };

  auto stepper = odeint::make_controlled(0.0, rel_tol,
                                         odeint::runge_kutta_fehlberg78<State>());
  State x{0.0, 1.0};
  double u = u0;
  double dt = std::min(1e-3 * u0, max_step);
  observe(u, x);

  long steps = 0;
  while (u < u_max) {
    const bool last = u + dt >= u_max;
    if (last)
      dt = u_max - u;
    const double before = u;
    const auto result = stepper.try_step(rhs, x, u, dt);
    if (result == odeint::fail) {
      if (dt < 1e-14 * before)
        throw IntegrationError("integrate_whittaker: step size underflow at u = " +
                               show(before) + " (dt = " + show(dt) + ", E = " +
                               show(energy) + ", rel_tol = " + show(rel_tol) + ")");
      continue;
    }
    if (last)
      u = u_max;
    dt = std::min(dt, max_step);
    observe(u, x);
    if (++steps > kMaxSteps)
      throw IntegrationError("integrate_whittaker: step budget exhausted at u = " +
                             show(u) + " (E = " + show(energy) + ")");
  }
  return x;
}

} // namespace

double whittaker_potential(double energy, double u) {
  return -0.25 + 0.5 / u + (energy * energy + 0.25) / (u * u);
}

RadialSolution integrate_whittaker(double energy, double u0, double u_max,
                                   double rel_tol, double max_step) {
  RadialSolution out;
  out.energy = energy;
  integrate(energy, u0, u_max, rel_tol, max_step, [&](double u, const State &x) {
    out.u.push_back(u);
    out.phi.push_back(x[0]);
    out.dphi.push_back(x[1]);
  });
  return out;
}

double shooting_functional(double energy, double u0, double u_max,
                           double rel_tol) {
  const State end = integrate(energy, u0, u_max, rel_tol,
                              std::numeric_limits<double>::infinity(),
                              [](double, const State &) {});
  return end[0] * std::exp(-0.5 * u_max) * std::sqrt(u_max);
}

double shoot_eigenvalue(double e_lo, double e_hi, double u0,
                        const ShootingOptions &options) {
  if (!(e_lo < e_hi))
    throw BracketError("shoot_eigenvalue: empty bracket [" + show(e_lo) + ", " +
                       show(e_hi) + "]");
  const auto s = [&](double e) {
    return shooting_functional(e, u0, options.u_max, options.rel_tol);
  };
  double s_lo = s(e_lo);
  const double s_hi = s(e_hi);
  if (std::signbit(s_lo) == std::signbit(s_hi))
    throw BracketError("shoot_eigenvalue: shooting functional has the same sign at E = " +
                       show(e_lo) + " and E = " + show(e_hi));

  double lo = e_lo, hi = e_hi;
  while (hi - lo > options.e_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    const double s_mid = s(mid);
    if (std::signbit(s_mid) == std::signbit(s_lo)) {
      lo = mid;
      s_lo = s_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> shooting_eigenvalues(double u0, int count,
                                         const ShootingOptions &options,
                                         double scan_step, double e_start) {
  if (count < 1)
    throw BracketError("shooting_eigenvalues: count must be >= 1");
  if (!(scan_step > 0.0 && e_start > 0.0))
    throw BracketError("shooting_eigenvalues: need scan_step > 0 and e_start > 0");

  std::vector<double> found;
  double e = e_start;
  double s = shooting_functional(e, u0, options.u_max, options.rel_tol);
  while (int(found.size()) < count) {
    const double e_next = e + scan_step;
    if (e_next > 1e4)
      throw BracketError("shooting_eigenvalues: fewer than " + std::to_string(count) +
                         " sign changes below E = 1e4");
    const double s_next = shooting_functional(e_next, u0, options.u_max, options.rel_tol);
    if (std::signbit(s) != std::signbit(s_next))
      found.push_back(shoot_eigenvalue(e, e_next, u0, options));
    e = e_next;
    s = s_next;
  }
  return found;
}

int shooting_sign_changes(std::span<const double> energies, double u0,
                          const ShootingOptions &options) {
  int changes = 0;
  bool have_prev = false;
  bool prev_negative = false;
  for (double e : energies) {
    const bool negative =
        std::signbit(shooting_functional(e, u0, options.u_max, options.rel_tol));
    if (have_prev && negative != prev_negative)
      ++changes;
    prev_negative = negative;
    have_prev = true;
  }
  return changes;
}

Complex closed_form_solution(double energy, double u0, double u) {
  const Complex i(0.0, 1.0);
  const Complex w_minus_0 = specfun::whittaker_m({0.5, -i * energy, u0});
  const Complex w_plus_0 = specfun::whittaker_m({0.5, i * energy, u0});
  const Complex w_plus = specfun::whittaker_m({0.5, i * energy, u});
  const Complex w_minus = specfun::whittaker_m({0.5, -i * energy, u});
  return w_minus_0 * w_plus - w_plus_0 * w_minus;
}

ClosedFormCheck residual_closed_form(double energy, double u0,
                                     std::span<const double> u_samples) {
  const Complex i(0.0, 1.0);
  const double scale = std::abs(specfun::whittaker_m({0.5, -i * energy, u0})) *
                       std::abs(specfun::whittaker_m({0.5, i * energy, u0}));

  ClosedFormCheck check;
  check.boundary_value = std::abs(closed_form_solution(energy, u0, u0)) / scale;
  if (check.boundary_value > kBoundaryTol)
    throw ConsistencyError("closed form violates phi(u0) = 0: relative value " +
                           show(check.boundary_value));

  for (double u : u_samples) {
    if (!(u > 0.0))
      throw DomainError("residual_closed_form: samples must be > 0");
    const double h = 1e-4 * u;
    const Complex f0 = closed_form_solution(energy, u0, u);
    const Complex fp = closed_form_solution(energy, u0, u + h);
    const Complex fm = closed_form_solution(energy, u0, u - h);
    const Complex d2 = (fp - 2.0 * f0 + fm) / (h * h);
    const Complex d1 = (fp - fm) / (2.0 * h);
    const double bound = 0.25 + 0.5 / u + (energy * energy + 0.25) / (u * u);
    const double denominator =
        std::abs(d2) + bound * (std::abs(f0) + u * std::abs(d1));
    const double residual =
        std::abs(d2 + whittaker_potential(energy, u) * f0) / denominator;
    check.max_residual = std::max(check.max_residual, residual);
  }
  return check;
}

} // namespace diracxp
