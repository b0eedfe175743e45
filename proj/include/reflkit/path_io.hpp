#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "reflkit/model.hpp"

namespace reflkit {

/// Shortest-round-trip-safe rendering: 17 significant digits, locale free.
std::string format_double(double value);
double parse_double(std::string_view text);
std::vector<std::string_view> split_csv_line(std::string_view line);

/// Path CSV:
///     # seed=<seed>
///     # delta=<..> sigma=<..> mode=<two_sided|one_sided_lower> lower=<..> [upper=<..>]
///     t,x,l_reg,r_reg
///     one row per grid point
void write_path_csv(std::ostream& out, const SamplePath& path);

/// Reads the format above. Missing metadata falls back to: delta from the
/// first two time stamps, sigma 0, two-sided barriers [0, 3], seed 0.
SamplePath read_path_csv(std::istream& in);

}  // namespace reflkit
