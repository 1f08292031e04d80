#include "diracxp/spectrum.hpp"

#include "diracxp/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

namespace diracxp {
namespace {

using std::numbers::pi;

constexpr double kUnimodularTol = 1e-8;
constexpr int kMaxBisections = 200;

std::string show(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

double level(int k) { return pi * (double(k) - 0.5); }

struct Bracket {
  int k;
  double lo;
  double hi;
  double phase_lo;
  double phase_hi;
};

EigenvalueRecord refine(const Bracket &b, const SpectralConfig &config) {
  const double target = level(b.k);
  double lo = b.lo, hi = b.hi;
  double f_lo = b.phase_lo - target, f_hi = b.phase_hi - target;
  if (!(f_lo < 0.0 && f_hi >= 0.0))
    throw BracketError("level " + std::to_string(b.k) +
                       " is not bracketed by [" + show(lo) + ", " + show(hi) + "]");

  for (int it = 0; it < kMaxBisections && hi - lo > config.tol_e; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = spectral_phase(mid, config.u0, config.variant) - target;
    if (f_mid < 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  if (hi - lo > config.tol_e)
    throw BracketError("bisection for level " + std::to_string(b.k) +
                       " stalled at width " + show(hi - lo));

  // Linear interpolation inside the final bracket.
  double energy = hi;
  if (f_hi > f_lo)
    energy = std::clamp(lo - f_lo * (hi - lo) / (f_hi - f_lo), lo, hi);
  const double residual =
      std::abs(spectral_phase(energy, config.u0, config.variant) - target);
  return {b.k, energy, residual, config.variant};
}

std::vector<EigenvalueRecord> refine_range(std::span<const Bracket> brackets,
                                           const SpectralConfig &config,
                                           std::exception_ptr &failure) {
  std::vector<EigenvalueRecord> out;
  out.reserve(brackets.size());
  try {
    for (const auto &b : brackets)
      out.push_back(refine(b, config));
  } catch (...) {
    failure = std::current_exception();
  }
  return out;
}

std::string describe(std::exception_ptr failure) {
  try {
    std::rethrow_exception(failure);
  } catch (const std::exception &e) {
    return e.what();
  } catch (...) {
    return "unknown failure";
  }
}

void require_monotone_cutoff(double u0) {
  if (u0 >= monotone_cutoff_bound())
    throw MonotonicityError(
        "spectral phase is not increasing near E = 0 for u0 = " + show(u0) +
            " (monotone only for u0 < e^-gamma = " + show(monotone_cutoff_bound()) +
            "); use a smaller u0",
        0.0);
}

} // namespace

std::string_view to_string(Variant v) {
  switch (v) {
  case Variant::Exact:
    return "exact";
  case Variant::Asymptotic:
    return "asymptotic";
  case Variant::Shooting:
    return "shooting";
  }
  return "unknown";
}

Variant parse_variant(std::string_view text) {
  if (text == "exact")
    return Variant::Exact;
  if (text == "asymptotic")
    return Variant::Asymptotic;
  throw ConfigError("variant must be 'exact' or 'asymptotic' (got '" +
                    std::string(text) + "')");
}

void SpectralConfig::validate() const {
  if (!(std::isfinite(u0) && u0 > 0.0 && u0 < 8.0))
    throw ConfigError("u0 must satisfy 0 < u0 < 8 (got " + show(u0) + ")");
  if (!(std::isfinite(e_min) && e_min >= 0.0))
    throw ConfigError("e_min must be >= 0 (got " + show(e_min) + ")");
  if (!(std::isfinite(e_max) && e_min < e_max))
    throw ConfigError("energy window must satisfy e_min < e_max (got [" +
                      show(e_min) + ", " + show(e_max) + "])");
  if (!(tol_e > 0.0))
    throw ConfigError("tol_e must be > 0 (got " + show(tol_e) + ")");
  if (!(scan_step > 0.0))
    throw ConfigError("scan_step must be > 0 (got " + show(scan_step) + ")");
  if (variant == Variant::Shooting)
    throw ConfigError("the shooting variant is produced by the ODE oracle, not "
                      "by phase enumeration");
  if (threads == 0)
    throw ConfigError("threads must be >= 1");
}

double mode_to_radial(const CylinderMode &mode, double u) {
  const double shift = double(mode.n) + mode.alpha;
  if (shift == 0.0)
    throw DomainError("degenerate cylinder mode: n + alpha = 0");
  if (!(u > 0.0))
    throw DomainError("mode_to_radial: u must be > 0");
  return mode.radius * u / (2.0 * shift);
}

double radial_to_mode(const CylinderMode &mode, double x) {
  const double shift = double(mode.n) + mode.alpha;
  if (shift == 0.0)
    throw DomainError("degenerate cylinder mode: n + alpha = 0");
  if (!(mode.radius > 0.0))
    throw DomainError("radial_to_mode: radius must be > 0");
  return 2.0 * shift * x / mode.radius;
}

double monotone_cutoff_bound() { return std::exp(-std::numbers::egamma); }

double phase_exact(double energy, double u0) {
  if (!(energy > 0.0))
    throw DomainError("phase_exact: E must be > 0 (got " + show(energy) + ")");
  if (!(u0 > 0.0))
    throw DomainError("phase_exact: u0 must be > 0 (got " + show(u0) + ")");

  const Complex i(0.0, 1.0);
  const Complex m_plus = specfun::kummer_m(i * energy, 1.0 + 2.0 * i * energy, u0);
  const Complex m_minus = specfun::kummer_m(-i * energy, 1.0 - 2.0 * i * energy, u0);

  // W_{1/2,+-iE}(u0) = e^{-u0/2} u0^{1/2 +- iE} M(+-iE, 1 +- 2iE; u0); the
  // powers of u0 carry the unwrapped part of the phase.
  const double lhs_modulus = std::abs(m_minus) / std::abs(m_plus);
  const double lhs_arg = -2.0 * energy * std::log(u0) + std::arg(m_minus) -
                         std::arg(m_plus);

  const Complex rhs_log = specfun::log_gamma(1.0 - 2.0 * i * energy) +
                          specfun::log_gamma(i * energy) -
                          specfun::log_gamma(1.0 + 2.0 * i * energy) -
                          specfun::log_gamma(-i * energy);
  const double rhs_modulus = std::exp(rhs_log.real());

  if (std::abs(lhs_modulus - 1.0) > kUnimodularTol ||
      std::abs(rhs_modulus - 1.0) > kUnimodularTol)
    throw ConsistencyError("exact spectral condition is not unimodular at E = " +
                           show(energy) + ": |lhs| - 1 = " + show(lhs_modulus - 1.0) +
                           ", |rhs| - 1 = " + show(rhs_modulus - 1.0));
  return lhs_arg - rhs_log.imag();
}

ExactConditionModuli exact_condition_moduli(double energy, double u0) {
  const Complex i(0.0, 1.0);
  const Complex w_plus = specfun::whittaker_m({0.5, i * energy, u0});
  const Complex w_minus = specfun::whittaker_m({0.5, -i * energy, u0});
  const Complex rhs = std::exp(specfun::log_gamma(1.0 - 2.0 * i * energy) +
                               specfun::log_gamma(i * energy) -
                               specfun::log_gamma(1.0 + 2.0 * i * energy) -
                               specfun::log_gamma(-i * energy));
  return {std::abs(w_minus / w_plus), std::abs(rhs)};
}

double phase_asymptotic(double energy, double u0) {
  if (!(energy >= 0.0))
    throw DomainError("phase_asymptotic: E must be >= 0 (got " + show(energy) + ")");
  if (!(u0 > 0.0 && u0 < 8.0))
    throw ConfigError("u0 must satisfy 0 < u0 < 8 (got " + show(u0) + ")");
  return energy * std::log(8.0 / u0) +
         specfun::log_gamma(Complex(0.25, 0.5 * energy)).imag() +
         specfun::log_gamma(Complex(0.75, 0.5 * energy)).imag();
}

Complex condition_gamma_form(double energy, double u0) {
  const Complex i(0.0, 1.0);
  const Complex half_e = 0.5 * i * energy;
  const Complex gamma_ratio =
      std::exp(specfun::log_gamma(0.25 + half_e) + specfun::log_gamma(0.75 + half_e) -
               specfun::log_gamma(0.25 - half_e) - specfun::log_gamma(0.75 - half_e));
  return -std::exp(-2.0 * i * energy * std::log(u0 / 8.0)) * gamma_ratio;
}

Complex condition_theta_form(double energy, double u0) {
  const Complex i(0.0, 1.0);
  const Complex half_e = 0.5 * i * energy;
  const double theta = specfun::riemann_siegel_theta(energy);
  const Complex theta_factor =
      std::exp(i * (2.0 * theta + energy * std::log(pi)));
  const Complex gamma_ratio = std::exp(specfun::log_gamma(0.75 + half_e) -
                                       specfun::log_gamma(0.75 - half_e));
  return -std::exp(-2.0 * i * energy * std::log(u0 / 8.0)) * theta_factor *
         gamma_ratio;
}

double spectral_phase(double energy, double u0, Variant variant) {
  switch (variant) {
  case Variant::Asymptotic:
    return phase_asymptotic(energy, u0);
  case Variant::Exact:
    if (energy == 0.0)
      return 0.0;
    return 0.5 * (phase_exact(energy, u0) - pi);
  case Variant::Shooting:
    break;
  }
  throw ConfigError("spectral_phase: no phase function for the shooting variant");
}

std::vector<EigenvalueRecord> eigenvalues(const SpectralConfig &config) {
  config.validate();
  if (config.variant == Variant::Asymptotic)
    require_monotone_cutoff(config.u0);

  const auto phase = [&](double e) {
    return spectral_phase(e, config.u0, config.variant);
  };

  // E = 0 is a trivial solution of phase = 0, never an eigenvalue.
  double e = config.e_min > 0.0 ? config.e_min : config.tol_e;
  if (!(e < config.e_max))
    return {};
  double ph = phase(e);
  int next_k = int(std::floor(ph / pi + 0.5)) + 1;

  std::vector<Bracket> brackets;
  double step = config.scan_step;
  while (e < config.e_max) {
    const double e_next = std::min(e + step, config.e_max);
    const double ph_next = phase(e_next);
    if (!(ph_next > ph))
      throw MonotonicityError("spectral phase decreases between E = " + show(e) +
                                  " and E = " + show(e_next) + " (u0 = " +
                                  show(config.u0) +
                                  "); use a smaller u0 or a smaller scan_step",
                              e);
    while (level(next_k) <= ph_next) {
      brackets.push_back({next_k, e, e_next, ph, ph_next});
      ++next_k;
    }
    // Keep roughly half a level per scan interval.
    const double slope = (ph_next - ph) / (e_next - e);
    step = std::min(config.scan_step, 0.5 * pi / slope);
    e = e_next;
    ph = ph_next;
  }

  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(config.threads, brackets.size()));
  const std::size_t chunk = (brackets.size() + workers - 1) / std::max<std::size_t>(workers, 1);
  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::vector<EigenvalueRecord>> parts(workers);
  const std::span<const Bracket> all(brackets);

  if (workers == 1) {
    parts[0] = refine_range(all, config, failures[0]);
  } else {
    std::vector<std::future<std::vector<EigenvalueRecord>>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(brackets.size(), w * chunk);
      const std::size_t end = std::min(brackets.size(), begin + chunk);
      jobs.push_back(std::async(std::launch::async, [&, w, begin, end] {
        return refine_range(all.subspan(begin, end - begin), config, failures[w]);
      }));
    }
    for (std::size_t w = 0; w < workers; ++w)
      parts[w] = jobs[w].get();
  }

  std::vector<EigenvalueRecord> records;
  records.reserve(brackets.size());
  for (std::size_t w = 0; w < workers; ++w) {
    records.insert(records.end(), parts[w].begin(), parts[w].end());
    if (failures[w])
      throw EnumerationError("eigenvalue refinement failed: " + describe(failures[w]),
                             std::move(records));
  }
  return records;
}

std::vector<EigenvalueRecord> first_eigenvalues(double u0, int count,
                                                Variant variant, double tol_e,
                                                double scan_step) {
  if (count < 1)
    throw ConfigError("count must be >= 1");
  SpectralConfig config;
  config.u0 = u0;
  config.tol_e = tol_e;
  config.variant = variant;
  config.scan_step = scan_step;
  config.validate();
  if (variant == Variant::Asymptotic)
    require_monotone_cutoff(u0);

  double e_max = 1.0;
  while (spectral_phase(e_max, u0, variant) < level(count)) {
    e_max *= 2.0;
    if (e_max > 1e6)
      throw EnumerationError("no window below E = 1e6 holds " +
                                 std::to_string(count) + " eigenvalues",
                             {});
  }
  config.e_max = e_max;
  auto records = eigenvalues(config);
  if (records.size() < std::size_t(count))
    throw EnumerationError("found only " + std::to_string(records.size()) +
                               " of " + std::to_string(count) + " eigenvalues",
                           std::move(records));
  records.resize(std::size_t(count));
  return records;
}

double counting_model(double energy, const SpectralConfig &config) {
  config.validate();
  if (!(energy >= 0.0))
    throw DomainError("counting_model: E must be >= 0 (got " + show(energy) + ")");
  if (config.variant == Variant::Asymptotic) {
    require_monotone_cutoff(config.u0);
  } else {
    double prev = 0.0;
    const int steps = std::max(1, int(std::ceil(energy / config.scan_step)));
    for (int j = 1; j <= steps; ++j) {
      const double e = energy * double(j) / double(steps);
      const double ph = spectral_phase(e, config.u0, config.variant);
      if (!(ph > prev))
        throw MonotonicityError("spectral phase decreases below E = " + show(e), e);
      prev = ph;
    }
  }
  return spectral_phase(energy, config.u0, config.variant) / pi + 0.5;
}

CalibrationResult calibrate_u0(std::span<const double> targets, int count,
                               const CalibrationOptions &options) {
  if (count < 1)
    throw ConfigError("calibration count must be >= 1");
  if (targets.size() < std::size_t(count))
    throw ConfigError("calibration needs " + std::to_string(count) +
                      " targets, table holds " + std::to_string(targets.size()));
  if (!(options.log_u0_min < options.log_u0_max) || options.grid_points < 3)
    throw ConfigError("calibration bracket is empty");

  constexpr double kInfeasible = std::numeric_limits<double>::infinity();
  const auto objective = [&](double log_u0) {
    std::vector<EigenvalueRecord> evs;
    try {
      evs = first_eigenvalues(std::exp(log_u0), count, options.variant, options.tol_e);
    } catch (const MonotonicityError &) {
      return kInfeasible;
    }
    double sum = 0.0;
    for (int k = 0; k < count; ++k) {
      const double d = evs[std::size_t(k)].energy - targets[std::size_t(k)];
      sum += d * d;
    }
    return sum;
  };

  const int n = options.grid_points;
  const double width = (options.log_u0_max - options.log_u0_min) / double(n - 1);
  const auto points = std::size_t(n);
  std::vector<double> grid(points), values(points);
  for (int j = 0; j < n; ++j) {
    grid[std::size_t(j)] = j + 1 == n ? options.log_u0_max : options.log_u0_min + width * j;
    values[std::size_t(j)] = objective(grid[std::size_t(j)]);
  }
  const auto best_it = std::min_element(values.begin(), values.end());
  if (!std::isfinite(*best_it))
    throw ConfigError("no cutoff in the calibration bracket gives an increasing phase");
  const std::size_t best = std::size_t(best_it - values.begin());

  // Local minima along the finite part of the scan.
  int minima = 0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!std::isfinite(values[j]))
      continue;
    const bool left_higher = j == 0 || !(values[j - 1] <= values[j]);
    const bool right_higher = j + 1 == values.size() || !(values[j + 1] <= values[j]);
    if (left_higher && right_higher)
      ++minima;
  }

  // Golden-section search inside the basin around the best grid point.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[std::min(best + 1, grid.size() - 1)];
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c), fd = objective(d);
  while (b - a > options.log_u0_tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }
  double log_u0 = 0.5 * (a + b);
  double value = objective(log_u0);
  if (!(value <= values[best])) {
    log_u0 = grid[best];
    value = values[best];
  }

  CalibrationResult result;
  result.u0 = std::exp(log_u0);
  result.objective = value;
  result.rms = std::sqrt(value / double(count));
  for (const auto &r : first_eigenvalues(result.u0, count, options.variant, options.tol_e))
    result.eigenvalues.push_back(r.energy);

  std::vector<std::string> notes;
  if (minima > 1)
    notes.push_back("objective is not unimodal on the ln u0 bracket (" +
                    std::to_string(minima) + " local minima); returning the best one");
  const bool on_boundary = best + 1 < values.size() &&
                           !std::isfinite(values[best + 1]) &&
                           !std::isfinite(objective(log_u0 + 1e-6));
  if (on_boundary)
    notes.push_back("optimum sits on the monotonicity boundary u0 ~ " +
                    show(monotone_cutoff_bound()) +
                    "; the targets are not reachable by the model");
  else if (log_u0 - options.log_u0_min < 2.0 * options.log_u0_tol ||
           options.log_u0_max - log_u0 < 2.0 * options.log_u0_tol)
    notes.push_back("optimum sits on the edge of the ln u0 bracket");
  if (!notes.empty()) {
    std::string joined;
    for (const auto &note : notes)
      joined += (joined.empty() ? "" : "; ") + note;
    result.warning = joined;
  }
  return result;
}

CalibrationResult calibrate_u0(const ZeroTable &targets, int count,
                               const CalibrationOptions &options) {
  return calibrate_u0(std::span<const double>(targets.ordinates), count, options);
}

} // namespace diracxp
