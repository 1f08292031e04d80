#include "diracxp/zero_table.hpp"

#include "diracxp/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <system_error>

namespace diracxp {
namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

} // namespace

ZeroTable load_zero_table(std::istream &in, const ZeroTableOptions &options) {
  ZeroTable table;
  table.source = options.source;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    std::size_t first = 0;
    while (first < view.size() && is_blank(view[first]))
      ++first;
    std::size_t last = view.size();
    while (last > first && is_blank(view[last - 1]))
      --last;
    if (first == last || view[first] == '#')
      continue;

    const char *begin = view.data() + first;
    const char *end = view.data() + last;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
      const std::size_t column =
          first + 1 + (ec == std::errc() ? std::size_t(ptr - begin) : 0);
      throw ParseError(options.source + ":" + std::to_string(line_no) + ":" +
                           std::to_string(column) + ": malformed ordinate '" +
                           std::string(begin, end) + "'",
                       line_no, column);
    }
    if (!(value > 0.0))
      throw ValidationError(options.source + ":" + std::to_string(line_no) +
                            ": ordinates must be positive");
    if (!table.ordinates.empty() && !(value > table.ordinates.back()))
      throw ValidationError(options.source + ":" + std::to_string(line_no) +
                            ": ordinates must be strictly increasing");
    table.ordinates.push_back(value);
  }

  if (options.sanity_gate && !table.empty()) {
    const double first = table.ordinates.front();
    if (!(first > 14.0 && first < 15.0))
      throw ValidationError(options.source +
                            ": first ordinate is not in (14, 15); not a table "
                            "of consecutive zeros from the first one");
  }
  return table;
}

ZeroTable load_zero_table(const std::filesystem::path &path,
                          ZeroTableOptions options) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open zero table '" + path.string() + "'");
  if (options.source == ZeroTableOptions{}.source)
    options.source = path.string();
  return load_zero_table(in, options);
}

void save_zero_table(std::ostream &out, const ZeroTable &table) {
  std::array<char, 64> buffer{};
  for (double value : table.ordinates) {
    const auto result =
        std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    out.write(buffer.data(), result.ptr - buffer.data());
    out.put('\n');
  }
}

std::size_t count_zeros(const ZeroTable &table, double energy) {
  return std::size_t(std::upper_bound(table.ordinates.begin(),
                                      table.ordinates.end(), energy) -
                     table.ordinates.begin());
}

} // namespace diracxp
