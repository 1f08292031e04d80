#pragma once

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace diracxp::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";
// Bumped whenever a CSV column or JSON key changes.
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitConfig = 2,
  kExitNumerical = 3,
};

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::string tool_version = std::string(kToolVersion);
  std::string timestamp; // UTC, ISO 8601

  nlohmann::ordered_json to_json() const;
};

std::string utc_timestamp();

// Shortest decimal that round-trips to the same double.
std::string format_double(double value);
// "re+imi" / "re-imi" with round-trip components.
std::string format_complex(double re, double im);

// "start:stop:step", inclusive of stop up to rounding. Throws ConfigError.
std::vector<double> parse_energy_grid(std::string_view text);

// RFC-4180 field quoting (only when needed).
std::string csv_field(std::string_view text);

/// Entry point shared by the executable and the tests. argv[0] is the
/// program name.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

// One named numeric check of the verification suite.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  double u0 = 1e-3;
  int n_eigen = 5;
  // When set, replaces every check's own tolerance.
  double tolerance_override = 0.0;
  bool override_tolerance = false;
};

std::vector<CheckResult> run_verification(const VerifyOptions &options);

} // namespace diracxp::cli
