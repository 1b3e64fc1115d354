#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "addcomb/point_set.hpp"

namespace addcomb {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Point-set text format:
//   dim <d>
//   <c_1> ... <c_d>        one point per line, rationals "num" or "num/den"
// Blank lines and lines starting with '#' are ignored. Duplicate points are
// rejected.

PointSet read_point_set(std::istream& in);
PointSet parse_point_set(std::string_view text);
PointSet load_point_set(const std::string& path);

/// Comments are written after the dim line, each prefixed "# ".
void write_point_set(std::ostream& out, const PointSet& set, const std::vector<std::string>& comments = {});
std::string format_point_set(const PointSet& set, const std::vector<std::string>& comments = {});

/// Space-separated coordinates, e.g. "3/2 0 -1".
std::string format_point(const Point& p);
/// Whitespace- or comma-separated rationals.
Point parse_point(std::string_view text);

}  // namespace addcomb
