#include "diracxp/cli.hpp"

#include "diracxp/errors.hpp"
#include "diracxp/specfun.hpp"
#include "diracxp/spectrum.hpp"
#include "diracxp/zeta.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

namespace diracxp::cli {
namespace {

enum class Format { Csv, Json };

struct OutputFlags {
  std::string format = "csv";
  std::string out_path;
  unsigned threads = 1;
  long seed = 0; // accepted for interface stability; nothing is stochastic
};

void add_output_flags(CLI::App &cmd, OutputFlags &flags) {
  cmd.add_option("--format", flags.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd.add_option("--out", flags.out_path, "Output file (default: stdout)");
  cmd.add_option("--threads", flags.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--seed", flags.seed, "Ignored: the pipeline is deterministic");
}

// Writes `body` to --out (or `out`). For CSV the manifest goes to a sidecar
// `<out>.manifest.json`, or to `err` when writing to stdout.
void emit(const OutputFlags &flags, const std::string &body,
          const nlohmann::ordered_json &manifest, std::ostream &out,
          std::ostream &err) {
  if (flags.out_path.empty()) {
    out << body;
    if (flags.format == "csv")
      err << "manifest: " << manifest.dump() << '\n';
    return;
  }
  std::ofstream file(flags.out_path, std::ios::binary);
  if (!file)
    throw ConfigError("cannot write output file '" + flags.out_path + "'");
  file << body;
  if (flags.format == "csv") {
    std::ofstream side(flags.out_path + ".manifest.json", std::ios::binary);
    side << manifest.dump(2) << '\n';
  }
}

std::string eigenvalue_csv(const std::vector<EigenvalueRecord> &records) {
  std::string csv = "index,energy,residual,variant\n";
  for (const auto &r : records) {
    csv += std::to_string(r.index) + ',' + format_double(r.energy) + ',' +
           format_double(r.residual) + ',' + std::string(to_string(r.variant)) + '\n';
  }
  return csv;
}

nlohmann::ordered_json eigenvalue_json(const std::vector<EigenvalueRecord> &records) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto &r : records) {
    nlohmann::ordered_json row;
    row["index"] = r.index;
    row["energy"] = r.energy;
    row["residual"] = r.residual;
    row["variant"] = std::string(to_string(r.variant));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sample_csv(const std::vector<CountingSample> &samples) {
  std::string csv = "energy,n_model,n_smooth,s_fluct,n_table\n";
  for (const auto &s : samples) {
    csv += format_double(s.energy) + ',' + format_double(s.n_model) + ',' +
           format_double(s.n_smooth) + ',' + format_double(s.s_fluct) + ',' +
           std::to_string(s.n_table) + '\n';
  }
  return csv;
}

nlohmann::ordered_json sample_json(const std::vector<CountingSample> &samples) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto &s : samples) {
    nlohmann::ordered_json row;
    row["energy"] = s.energy;
    row["n_model"] = s.n_model;
    row["n_smooth"] = s.n_smooth;
    row["s_fluct"] = s.s_fluct;
    row["n_table"] = s.n_table;
    rows.push_back(std::move(row));
  }
  return rows;
}

struct EigenvaluesFlags {
  double u0 = 1e-3;
  double e_min = 0.0;
  double e_max = 50.0;
  std::string variant = "asymptotic";
  double tol = 1e-9;
  double scan_step = 0.05;
  OutputFlags output;
};

int cmd_eigenvalues(const EigenvaluesFlags &flags, std::ostream &out, std::ostream &err) {
  SpectralConfig config;
  config.u0 = flags.u0;
  config.e_min = flags.e_min;
  config.e_max = flags.e_max;
  config.variant = parse_variant(flags.variant);
  config.tol_e = flags.tol;
  config.scan_step = flags.scan_step;
  config.threads = flags.output.threads;
  config.validate();

  RunManifest manifest;
  manifest.command = "eigenvalues";
  manifest.timestamp = utc_timestamp();
  manifest.parameters = {
      {"u0", format_double(config.u0)},
      {"e_min", format_double(config.e_min)},
      {"e_max", format_double(config.e_max)},
      {"variant", flags.variant},
      {"tol", format_double(config.tol_e)},
      {"scan_step", format_double(config.scan_step)},
      {"format", flags.output.format},
      {"threads", std::to_string(config.threads)},
      {"seed", std::to_string(flags.output.seed)},
  };

  const auto records = eigenvalues(config);
  if (flags.output.format == "json") {
    nlohmann::ordered_json doc;
    doc["manifest"] = manifest.to_json();
    doc["eigenvalues"] = eigenvalue_json(records);
    emit(flags.output, doc.dump(2) + "\n", doc["manifest"], out, err);
  } else {
    emit(flags.output, eigenvalue_csv(records), manifest.to_json(), out, err);
  }
  return kExitOk;
}

struct CompareFlags {
  double u0 = 1e-3;
  std::string zeros;
  int calibrate = 0;
  std::string e_grid = "10:100:10";
  std::string variant = "asymptotic";
  bool no_sanity_gate = false;
  OutputFlags output;
};

int cmd_compare(CompareFlags flags, std::ostream &out, std::ostream &err) {
  if (flags.zeros.empty()) {
    if (const char *env = std::getenv("DIRACXP_ZEROS"))
      flags.zeros = env;
  }
  if (flags.zeros.empty())
    throw ConfigError("no zero table: pass --zeros <path> or set DIRACXP_ZEROS");
  if (!std::filesystem::exists(flags.zeros))
    throw ConfigError("zero table '" + flags.zeros + "' does not exist");

  ZeroTableOptions table_options;
  table_options.sanity_gate = !flags.no_sanity_gate;
  const ZeroTable table = load_zero_table(std::filesystem::path(flags.zeros), table_options);
  const auto grid = parse_energy_grid(flags.e_grid);

  SpectralConfig config;
  config.u0 = flags.u0;
  config.variant = parse_variant(flags.variant);
  config.threads = flags.output.threads;
  config.validate();

  nlohmann::ordered_json summary;
  if (flags.calibrate > 0) {
    CalibrationOptions options;
    options.variant = config.variant;
    const auto cal = calibrate_u0(table, flags.calibrate, options);
    config.u0 = cal.u0;
    summary["calibration"] = {{"count", flags.calibrate},
                              {"u0", cal.u0},
                              {"rms", cal.rms},
                              {"warning", cal.warning.value_or("")}};
    if (cal.warning)
      err << "warning: calibration: " << *cal.warning << '\n';
  }

  const auto samples = compare_counting(config, table, grid);
  double model_sq = 0.0, rvm_sq = 0.0, rvm_max = 0.0;
  long mismatches = 0;
  for (const auto &s : samples) {
    const double dm = s.n_model - double(s.n_table);
    const double dr = s.n_smooth + s.s_fluct - double(s.n_table);
    model_sq += dm * dm;
    rvm_sq += dr * dr;
    rvm_max = std::max(rvm_max, std::abs(dr));
    if (std::lround(s.n_smooth + s.s_fluct) != s.n_table)
      ++mismatches;
  }
  const double n = double(std::max<std::size_t>(1, samples.size()));
  summary["u0"] = config.u0;
  summary["rms_model_minus_table"] = std::sqrt(model_sq / n);
  summary["rms_smooth_plus_s_minus_table"] = std::sqrt(rvm_sq / n);
  summary["max_abs_smooth_plus_s_minus_table"] = rvm_max;
  summary["rounding_mismatches"] = mismatches;
  err << "rms_model_minus_table=" << format_double(std::sqrt(model_sq / n))
      << " rms_smooth_plus_s_minus_table=" << format_double(std::sqrt(rvm_sq / n))
      << " rounding_mismatches=" << mismatches << '\n';

  RunManifest manifest;
  manifest.command = "compare";
  manifest.timestamp = utc_timestamp();
  manifest.parameters = {
      {"u0", format_double(flags.u0)},
      {"zeros", flags.zeros},
      {"calibrate", std::to_string(flags.calibrate)},
      {"e_grid", flags.e_grid},
      {"variant", flags.variant},
      {"sanity_gate", flags.no_sanity_gate ? "off" : "on"},
      {"format", flags.output.format},
      {"threads", std::to_string(flags.output.threads)},
      {"seed", std::to_string(flags.output.seed)},
  };
  auto manifest_json = manifest.to_json();
  manifest_json["summary"] = summary;

  if (flags.output.format == "json") {
    nlohmann::ordered_json doc;
    doc["manifest"] = manifest_json;
    doc["summary"] = summary;
    doc["samples"] = sample_json(samples);
    emit(flags.output, doc.dump(2) + "\n", manifest_json, out, err);
  } else {
    emit(flags.output, sample_csv(samples), manifest_json, out, err);
  }
  return kExitOk;
}

struct VerifyFlags {
  double u0 = 1e-3;
  int n_eigen = 5;
  double tol = 0.0;
  bool json = false;
  std::string out_path;
};

int cmd_verify(const VerifyFlags &flags, std::ostream &out) {
  VerifyOptions options;
  options.u0 = flags.u0;
  options.n_eigen = flags.n_eigen;
  options.override_tolerance = flags.tol > 0.0;
  options.tolerance_override = flags.tol;
  if (!(options.u0 > 0.0 && options.u0 < monotone_cutoff_bound()))
    throw ConfigError("verify needs 0 < u0 < e^-gamma (got " + format_double(options.u0) + ")");
  if (options.n_eigen < 1)
    throw ConfigError("--n-eigen must be >= 1");

  const auto results = run_verification(options);
  bool all = true;
  auto checks = nlohmann::ordered_json::array();
  std::ostringstream text;
  for (const auto &r : results) {
    all = all && r.passed;
    text << (r.passed ? "PASS " : "FAIL ") << r.name << " value=" << format_double(r.value)
         << " tolerance=" << format_double(r.tolerance) << "  (" << r.detail << ")\n";
    nlohmann::ordered_json c;
    c["name"] = r.name;
    c["value"] = std::isfinite(r.value) ? nlohmann::ordered_json(r.value) : nlohmann::ordered_json();
    c["tolerance"] = r.tolerance;
    c["passed"] = r.passed;
    c["detail"] = r.detail;
    checks.push_back(std::move(c));
  }
  text << (all ? "all checks passed\n" : "verification FAILED\n");

  RunManifest manifest;
  manifest.command = "verify";
  manifest.timestamp = utc_timestamp();
  manifest.parameters = {{"u0", format_double(flags.u0)},
                         {"n_eigen", std::to_string(flags.n_eigen)},
                         {"tol", flags.tol > 0.0 ? format_double(flags.tol) : "default"}};
  nlohmann::ordered_json report;
  report["manifest"] = manifest.to_json();
  report["passed"] = all;
  report["checks"] = checks;

  if (flags.json)
    out << report.dump(2) << '\n';
  else
    out << text.str();
  if (!flags.out_path.empty()) {
    std::ofstream file(flags.out_path, std::ios::binary);
    if (!file)
      throw ConfigError("cannot write report '" + flags.out_path + "'");
    file << report.dump(2) << '\n';
  }
  return all ? kExitOk : kExitCheckFailed;
}

struct SpecfunFlags {
  double e = 0.0;
  double re = 0.0, im = 0.0;
  double a_re = 0.0, a_im = 0.0, b_re = 1.0, b_im = 0.0;
  double k_re = 0.5, k_im = 0.0, m_re = 0.0, m_im = 0.0;
  double u = 1.0;
  bool json = false;
};

void print_value(std::ostream &out, Complex z, bool json) {
  if (json) {
    nlohmann::ordered_json j;
    j["re"] = z.real();
    j["im"] = z.imag();
    j["abs"] = std::abs(z);
    out << j.dump() << '\n';
  } else {
    out << format_complex(z.real(), z.imag()) << '\n';
  }
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Spectral pipeline of the Dirac-type x sigma.p model", "diracxp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  EigenvaluesFlags eig;
  auto *eig_cmd = app.add_subcommand("eigenvalues", "Enumerate eigenvalues of the cutoff problem");
  eig_cmd->add_option("--u0", eig.u0, "Cutoff, 0 < u0 < 8");
  eig_cmd->add_option("--e-min", eig.e_min, "Lower end of the energy window (exclusive)");
  eig_cmd->add_option("--e-max", eig.e_max, "Upper end of the energy window (inclusive)");
  eig_cmd->add_option("--variant", eig.variant, "exact or asymptotic")
      ->check(CLI::IsMember({"exact", "asymptotic"}));
  eig_cmd->add_option("--tol", eig.tol, "Eigenvalue tolerance in E");
  eig_cmd->add_option("--scan-step", eig.scan_step, "Initial bracketing step in E");
  add_output_flags(*eig_cmd, eig.output);

  CompareFlags cmp;
  auto *cmp_cmd = app.add_subcommand("compare", "Compare model counting with a zero table");
  cmp_cmd->add_option("--u0", cmp.u0, "Cutoff (ignored when --calibrate is given)");
  cmp_cmd->add_option("--zeros", cmp.zeros, "Zero table (default: $DIRACXP_ZEROS)");
  cmp_cmd->add_option("--calibrate", cmp.calibrate, "Fit u0 to the first k ordinates")
      ->check(CLI::NonNegativeNumber);
  cmp_cmd->add_option("--e-grid", cmp.e_grid, "start:stop:step");
  cmp_cmd->add_option("--variant", cmp.variant, "exact or asymptotic")
      ->check(CLI::IsMember({"exact", "asymptotic"}));
  cmp_cmd->add_flag("--no-sanity-gate", cmp.no_sanity_gate,
                    "Accept tables not starting at the first zero");
  add_output_flags(*cmp_cmd, cmp.output);

  VerifyFlags ver;
  auto *ver_cmd = app.add_subcommand("verify", "Run the cross-validation and identity checks");
  ver_cmd->add_option("--u0", ver.u0, "Cutoff");
  ver_cmd->add_option("--n-eigen", ver.n_eigen, "Eigenvalues to cross-check");
  ver_cmd->add_option("--tol", ver.tol, "Replace every check tolerance with this value");
  ver_cmd->add_flag("--json", ver.json, "Print the JSON report instead of text");
  ver_cmd->add_option("--out", ver.out_path, "Also write the JSON report here");

  SpecfunFlags sf;
  auto *sf_cmd = app.add_subcommand("specfun", "Evaluate a special function");
  sf_cmd->require_subcommand(1);
  sf_cmd->add_flag("--json", sf.json, "Print re, im and abs as JSON");
  auto *theta_cmd = sf_cmd->add_subcommand("theta", "Riemann-Siegel theta(E)");
  theta_cmd->add_option("--e", sf.e, "Energy")->required();
  auto *lg_cmd = sf_cmd->add_subcommand("loggamma", "Principal log Gamma(z)");
  lg_cmd->add_option("--re", sf.re, "Re z")->required();
  lg_cmd->add_option("--im", sf.im, "Im z");
  auto *km_cmd = sf_cmd->add_subcommand("kummer", "Kummer M(a, b; u)");
  km_cmd->add_option("--a-re", sf.a_re);
  km_cmd->add_option("--a-im", sf.a_im);
  km_cmd->add_option("--b-re", sf.b_re);
  km_cmd->add_option("--b-im", sf.b_im);
  km_cmd->add_option("--u", sf.u)->required();
  auto *wh_cmd = sf_cmd->add_subcommand("whittaker", "e^{-u/2} u^{m+1/2} M(m-k+1/2, 1+2m; u)");
  wh_cmd->add_option("--k", sf.k_re, "Re k");
  wh_cmd->add_option("--k-im", sf.k_im, "Im k");
  wh_cmd->add_option("--m-re", sf.m_re, "Re m");
  wh_cmd->add_option("--m-im", sf.m_im, "Im m");
  wh_cmd->add_option("--u", sf.u)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty())
    reversed.pop_back(); // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion &) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*eig_cmd)
      return cmd_eigenvalues(eig, out, err);
    if (*cmp_cmd)
      return cmd_compare(cmp, out, err);
    if (*ver_cmd)
      return cmd_verify(ver, out);
    if (*sf_cmd) {
      if (*theta_cmd) {
        const double value = specfun::riemann_siegel_theta(sf.e);
        if (sf.json)
          out << nlohmann::ordered_json{{"value", value}}.dump() << '\n';
        else
          out << format_double(value) << '\n';
      } else if (*lg_cmd) {
        print_value(out, specfun::log_gamma({sf.re, sf.im}), sf.json);
      } else if (*km_cmd) {
        print_value(out, specfun::kummer_m({sf.a_re, sf.a_im}, {sf.b_re, sf.b_im}, sf.u),
                    sf.json);
      } else if (*wh_cmd) {
        print_value(out, specfun::whittaker_m({{sf.k_re, sf.k_im}, {sf.m_re, sf.m_im}, sf.u}),
                    sf.json);
      }
      return kExitOk;
    }
  } catch (const ConfigError &e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError &e) {
    err << "zero table parse error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ValidationError &e) {
    err << "zero table error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error &e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}

} // namespace diracxp::cli
