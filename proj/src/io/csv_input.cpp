#include "mvph/io/csv_input.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "mvph/core/error.hpp"

namespace mvph {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_number(std::string_view field, double& value) {
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  return ec == std::errc() && ptr == field.data() + field.size();
}

}  // namespace

PointCloud parse_points(std::istream& in) {
  std::vector<double> coords;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  bool seen_content = false;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    const auto fields = split_fields(text);
    double first;
    if (!seen_content) {
      seen_content = true;
      if (!parse_number(fields.front(), first)) continue;  // header
    }
    if (dim == 0) dim = fields.size();
    if (fields.size() != dim)
      throw DataError("line " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                      " fields, found " + std::to_string(fields.size()));
    for (std::size_t i = 0; i < fields.size(); ++i) {
      double v;
      if (!parse_number(fields[i], v) || !std::isfinite(v))
        throw DataError("line " + std::to_string(line_no) + ", field " + std::to_string(i + 1) +
                        ": '" + std::string(fields[i]) + "' is not a finite number");
      coords.push_back(v);
    }
  }
  if (dim == 0) throw DataError("input contains no points");
  try {
    return PointCloud(dim, std::move(coords));
  } catch (const DataError& e) {
    throw DataError(std::string("input: ") + e.what());
  }
}

PointCloud parse_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open input file " + path);
  return parse_points(in);
}

void write_points(const PointCloud& cloud, std::ostream& out) {
  char buf[64];
  for (Vertex v = 0; v < cloud.size(); ++v) {
    for (std::size_t a = 0; a < cloud.dim(); ++a) {
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, cloud.coord(v, a));
      (void)ec;
      if (a) out << ',';
      out.write(buf, ptr - buf);
    }
    out << '\n';
  }
}

}  // namespace mvph
