#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace diracxp {

// Ordinates of nontrivial zeros on the critical line, strictly increasing.
struct ZeroTable {
  std::vector<double> ordinates;
  std::string source;

  std::size_t size() const noexcept { return ordinates.size(); }
  bool empty() const noexcept { return ordinates.empty(); }
};

struct ZeroTableOptions {
  // Reject tables whose first entry is not in (14, 15).
  bool sanity_gate = true;
  std::string source = "<stream>";
};

/// Reads one decimal ordinate per line. Lines whose first non-blank
/// character is '#' and blank lines are skipped; LF and CRLF endings are
/// both accepted. Throws ParseError (1-based line/column) on a malformed
/// number and ValidationError when the sequence is not strictly increasing
/// or fails the sanity gate.
ZeroTable load_zero_table(std::istream &in, const ZeroTableOptions &options = {});

// As above; the source label defaults to the path.
ZeroTable load_zero_table(const std::filesystem::path &path,
                          ZeroTableOptions options = {});

// One ordinate per line in shortest round-trip decimal form.
void save_zero_table(std::ostream &out, const ZeroTable &table);

// Number of ordinates <= energy (closed upper bound).
std::size_t count_zeros(const ZeroTable &table, double energy);

} // namespace diracxp
