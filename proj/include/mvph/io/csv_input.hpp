#pragma once

#include <iosfwd>
#include <string>

#include "mvph/core/point_cloud.hpp"

namespace mvph {

// One point per line, comma-separated decimals. A first line whose first
// field is not a number is a header; blank lines are ignored; the dimension
// comes from the first data line. Errors name the offending line.
PointCloud parse_points(std::istream& in);
PointCloud parse_input(const std::string& path);

// Shortest round-trip decimal for every coordinate.
void write_points(const PointCloud& cloud, std::ostream& out);

}  // namespace mvph
