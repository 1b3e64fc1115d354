#include "addcomb/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace addcomb {

namespace {

std::vector<std::string> tokens(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool skippable(const std::vector<std::string>& toks, std::string_view line) {
  const auto first = line.find_first_not_of(" \t\r");
  return toks.empty() || (first != std::string_view::npos && line[first] == '#');
}

}  // namespace

PointSet read_point_set(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  Eigen::Index dim = 0;
  std::vector<Point> points;
  std::vector<std::size_t> origin;

  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = tokens(line);
    if (skippable(toks, line)) continue;

    if (dim == 0) {
      if (toks.size() != 2 || toks[0] != "dim") throw ParseError(lineno, "expected 'dim <d>'");
      long d = 0;
      try {
        std::size_t used = 0;
        d = std::stol(toks[1], &used);
        if (used != toks[1].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(lineno, "malformed dimension '" + toks[1] + "'");
      }
      if (d < 1) throw ParseError(lineno, "dimension must be positive");
      dim = d;
      continue;
    }

    if (static_cast<Eigen::Index>(toks.size()) != dim) {
      throw ParseError(lineno, "expected " + std::to_string(dim) + " coordinates, found " + std::to_string(toks.size()));
    }
    Point p(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      try {
        p(i) = Rational::parse(toks[i]);
      } catch (const std::exception& e) {
        throw ParseError(lineno, e.what());
      }
    }
    points.push_back(std::move(p));
    origin.push_back(lineno);
  }
  if (dim == 0) throw ParseError(lineno, "missing 'dim <d>' header");

  // Duplicate detection on the original line order so the error names the
  // later of the two lines.
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lex_less(points[a], points[b]); });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (points_equal(points[order[i - 1]], points[order[i]])) {
      const auto first = std::min(origin[order[i - 1]], origin[order[i]]);
      const auto second = std::max(origin[order[i - 1]], origin[order[i]]);
      throw ParseError(second, "duplicate point (first seen on line " + std::to_string(first) + ")");
    }
  }
  return PointSet(dim, std::move(points));
}

PointSet parse_point_set(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_point_set(in);
}

PointSet load_point_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return read_point_set(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
  }
}

std::string format_point(const Point& p) {
  std::string out;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (i) out += ' ';
    out += p(i).str();
  }
  return out;
}

Point parse_point(std::string_view text) {
  const auto toks = tokens(text);
  if (toks.empty()) throw std::invalid_argument("empty point");
  Point p(static_cast<Eigen::Index>(toks.size()));
  for (std::size_t i = 0; i < toks.size(); ++i) p(static_cast<Eigen::Index>(i)) = Rational::parse(toks[i]);
  return p;
}

void write_point_set(std::ostream& out, const PointSet& set, const std::vector<std::string>& comments) {
  out << "dim " << set.dim() << '\n';
  for (const auto& c : comments) out << "# " << c << '\n';
  for (const auto& p : set) out << format_point(p) << '\n';
}

std::string format_point_set(const PointSet& set, const std::vector<std::string>& comments) {
  std::ostringstream out;
  write_point_set(out, set, comments);
  return out.str();
}

}  // namespace addcomb
