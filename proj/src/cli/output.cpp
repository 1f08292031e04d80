#include "diracxp/cli.hpp"

#include "diracxp/errors.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>

namespace diracxp::cli {

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["tool_version"] = tool_version;
  j["schema_version"] = kSchemaVersion;
  j["timestamp"] = timestamp;
  return j;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::array<char, 32> buffer{};
  std::strftime(buffer.data(), buffer.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer.data();
}

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), result.ptr);
}

std::string format_complex(double re, double im) {
  std::string out = format_double(re);
  out += std::signbit(im) ? '-' : '+';
  out += format_double(std::abs(im));
  out += 'i';
  return out;
}

std::vector<double> parse_energy_grid(std::string_view text) {
  std::array<double, 3> parts{};
  std::size_t pos = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    const std::size_t colon = j < 2 ? text.find(':', pos) : text.size();
    if (colon == std::string_view::npos)
      throw ConfigError("energy grid must look like start:stop:step (got '" +
                        std::string(text) + "')");
    const std::string_view token = text.substr(pos, colon - pos);
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), parts[j]);
    if (ec != std::errc() || ptr != token.data() + token.size())
      throw ConfigError("energy grid field '" + std::string(token) +
                        "' is not a number");
    pos = colon + 1;
  }
  const auto [start, stop, step] = parts;
  if (!(step > 0.0) || !(stop >= start))
    throw ConfigError("energy grid needs step > 0 and stop >= start (got '" +
                      std::string(text) + "')");
  const long count = long(std::floor((stop - start) / step + 1e-9)) + 1;
  if (count > 10'000'000)
    throw ConfigError("energy grid has too many points");
  std::vector<double> grid;
  grid.reserve(std::size_t(count));
  for (long j = 0; j < count; ++j)
    grid.push_back(start + double(j) * step);
  return grid;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos)
    return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"')
      out += '"';
    out += c;
  }
  out += '"';
  return out;
}

} // namespace diracxp::cli
