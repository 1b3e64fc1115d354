#include "addcomb/structure.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "addcomb/io.hpp"
#include "addcomb/random.hpp"

namespace addcomb {

Direction Direction::from(const Point& v) {
  Point p = primitive_integer_vector(v);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i).is_zero()) continue;
    if (p(i).sign() < 0) p = -p;
    break;
  }
  return Direction(std::move(p));
}

PointSet LineDecomposition::kept() const {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < r_selected && i < fibers.size(); ++i) {
    pts.insert(pts.end(), fibers[i].members.begin(), fibers[i].members.end());
  }
  return PointSet(direction.dim(), std::move(pts));
}

Point line_base(const Point& p, const Direction& dir) {
  const Point& v = dir.vector();
  Rational pv(0), vv(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    pv += p(i) * v(i);
    vv += v(i) * v(i);
  }
  return p - v * (pv / vv);
}

namespace {

void sort_fibers(std::vector<Fiber>& fibers) {
  std::sort(fibers.begin(), fibers.end(), [](const Fiber& x, const Fiber& y) {
    if (x.members.size() != y.members.size()) return x.members.size() > y.members.size();
    return lex_less(x.base, y.base);
  });
}

// ---------------------------------------------------------------------------
// Integer scoring of candidate directions.

std::int64_t int_gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
mpz_class int_gcd(const mpz_class& a, const mpz_class& b) { return gcd(a, b); }
int int_sign(std::int64_t a) { return (a > 0) - (a < 0); }
int int_sign(const mpz_class& a) { return sgn(a); }

/// Points with integer coordinates stored row-major in one flat buffer.
template <typename Int>
struct IntPoints {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<Int> c;
  const Int* row(std::size_t i) const { return c.data() + i * d; }
};

/// (largest fiber, fiber count) of the set along an integer direction. The
/// line of p is keyed by v_k p - p_k v for the first k with v_k != 0.
template <typename Int>
std::pair<std::size_t, std::size_t> score_exact(const IntPoints<Int>& pts, const std::vector<Int>& v) {
  std::size_t k = 0;
  while (v[k] == 0) ++k;
  std::map<std::vector<Int>, std::size_t> lines;
  std::vector<Int> key(pts.d);
  for (std::size_t i = 0; i < pts.n; ++i) {
    const Int* p = pts.row(i);
    for (std::size_t j = 0; j < pts.d; ++j) key[j] = v[k] * p[j] - p[k] * v[j];
    ++lines[key];
  }
  std::size_t largest = 0;
  for (const auto& [_, count] : lines) largest = std::max(largest, count);
  return {largest, lines.size()};
}

struct Candidate {
  std::size_t largest;
  std::size_t fibers;
  std::size_t key;  // index into the flat direction buffer
};

/// Scores every primitive direction of pairwise differences of `pts`; returns
/// candidates and the flat buffer of their direction vectors.
template <typename Int>
std::pair<std::vector<Candidate>, std::vector<Int>> score_pairs(const IntPoints<Int>& pts) {
  const std::size_t n = pts.n, d = pts.d;
  const std::size_t pairs = n * (n - 1) / 2;
  std::vector<Int> dirs;
  dirs.reserve(pairs * d);
  std::vector<std::uint32_t> pi, pj;
  pi.reserve(pairs);
  pj.reserve(pairs);
  std::vector<Int> diff(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Int g = 0;
      for (std::size_t t = 0; t < d; ++t) {
        diff[t] = pts.row(j)[t] - pts.row(i)[t];
        g = int_gcd(g, diff[t]);
      }
      int sign = 0;
      for (std::size_t t = 0; t < d && sign == 0; ++t) sign = int_sign(diff[t]);
      if (sign < 0) g = -g;
      for (std::size_t t = 0; t < d; ++t) dirs.push_back(diff[t] / g);
      pi.push_back(static_cast<std::uint32_t>(i));
      pj.push_back(static_cast<std::uint32_t>(j));
    }
  }

  std::vector<std::size_t> order(pairs);
  std::iota(order.begin(), order.end(), 0);
  auto dir_less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(dirs.begin() + a * d, dirs.begin() + (a + 1) * d, dirs.begin() + b * d,
                                        dirs.begin() + (b + 1) * d);
  };
  auto dir_equal = [&](std::size_t a, std::size_t b) {
    return std::equal(dirs.begin() + a * d, dirs.begin() + (a + 1) * d, dirs.begin() + b * d);
  };
  std::sort(order.begin(), order.end(), dir_less);

  std::vector<std::uint32_t> parent(n), size(n, 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  std::vector<Candidate> out;
  std::vector<std::uint32_t> touched;
  for (std::size_t g = 0; g < pairs;) {
    std::size_t h = g;
    std::size_t merges = 0, largest = 1;
    while (h < pairs && dir_equal(order[g], order[h])) {
      std::uint32_t a = find(pi[order[h]]), b = find(pj[order[h]]);
      touched.push_back(pi[order[h]]);
      touched.push_back(pj[order[h]]);
      if (a != b) {
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        largest = std::max<std::size_t>(largest, size[a]);
        ++merges;
      }
      ++h;
    }
    out.push_back({largest, n - merges, order[g]});
    for (auto t : touched) parent[t] = t, size[t] = 1;
    touched.clear();
    g = h;
  }
  return {std::move(out), std::move(dirs)};
}

template <typename Int>
bool better(std::size_t la, std::size_t fa, const Int* da, std::size_t lb, std::size_t fb, const Int* db,
            std::size_t d) {
  if (la != lb) return la > lb;
  if (fa != fb) return fa < fb;
  return std::lexicographical_compare(db, db + d, da, da + d);
}

template <typename Int>
std::vector<Int> choose_direction(const IntPoints<Int>& pts, const StructureConfig& config) {
  const std::size_t d = pts.d;
  if (pts.n <= config.full_scan_limit) {
    auto [cands, dirs] = score_pairs(pts);
    const Candidate* best = &cands.front();
    for (const auto& c : cands) {
      if (better(c.largest, c.fibers, dirs.data() + c.key * d, best->largest, best->fibers,
                 dirs.data() + best->key * d, d)) {
        best = &c;
      }
    }
    return {dirs.begin() + best->key * d, dirs.begin() + (best->key + 1) * d};
  }

  // Deterministic sample over the canonical (sorted) order.
  CounterRng rng(config.sample_seed);
  std::set<std::uint64_t> chosen;
  const std::uint64_t total = pts.n;
  for (std::uint64_t j = total - config.sample_size; j < total; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  IntPoints<Int> sample{config.sample_size, d, {}};
  sample.c.reserve(config.sample_size * d);
  for (auto idx : chosen) sample.c.insert(sample.c.end(), pts.row(idx), pts.row(idx) + d);

  auto [cands, dirs] = score_pairs(sample);
  std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
    return better(a.largest, a.fibers, dirs.data() + a.key * d, b.largest, b.fibers, dirs.data() + b.key * d, d);
  });
  cands.resize(std::min(cands.size(), config.refine_candidates));

  std::vector<Int> best_dir;
  std::size_t best_largest = 0, best_fibers = 0;
  for (const auto& c : cands) {
    std::vector<Int> v(dirs.begin() + c.key * d, dirs.begin() + (c.key + 1) * d);
    const auto [largest, fibers] = score_exact(pts, v);
    if (best_dir.empty() || better(largest, fibers, v.data(), best_largest, best_fibers, best_dir.data(), d)) {
      best_dir = std::move(v), best_largest = largest, best_fibers = fibers;
    }
  }
  return best_dir;
}

/// Scales A by the lcm of its denominators. Differences of the scaled points
/// have the same primitive directions as those of A.
std::vector<mpz_class> integer_coordinates(const PointSet& a) {
  mpz_class lcm = 1;
  for (const auto& p : a) {
    for (Eigen::Index i = 0; i < p.size(); ++i) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), p(i).den().get_mpz_t());
  }
  std::vector<mpz_class> out;
  out.reserve(a.size() * static_cast<std::size_t>(a.dim()));
  for (const auto& p : a) {
    for (Eigen::Index i = 0; i < p.size(); ++i) out.push_back(p(i).num() * (lcm / p(i).den()));
  }
  return out;
}

}  // namespace

LineDecomposition fibers_along(const PointSet& a, const Direction& dir) {
  if (a.empty()) throw DimensionError("fibers_along: empty set");
  if (dir.dim() != a.dim()) throw DimensionError("fibers_along: direction has wrong length");
  std::vector<std::pair<Point, Point>> keyed;  // (base, point)
  keyed.reserve(a.size());
  for (const auto& p : a) keyed.emplace_back(line_base(p, dir), p);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return lex_less(x.first, y.first); });

  std::vector<Fiber> fibers;
  for (std::size_t i = 0; i < keyed.size();) {
    std::size_t j = i;
    std::vector<Point> members;
    while (j < keyed.size() && points_equal(keyed[i].first, keyed[j].first)) members.push_back(keyed[j++].second);
    fibers.push_back({keyed[i].first, PointSet(a.dim(), std::move(members))});
    i = j;
  }
  sort_fibers(fibers);
  const std::size_t r = fibers.size();
  return {dir, std::move(fibers), PointSet(a.dim()), r};
}

Direction best_direction(const PointSet& a, const StructureConfig& config) {
  if (a.size() < 2) throw DimensionError("best_direction: need at least two points");
  const auto d = static_cast<std::size_t>(a.dim());
  const auto coords = integer_coordinates(a);

  // Differences and the v_k p - p_k v keys stay far inside 64 bits when the
  // scaled coordinates are below 2^30.
  const mpz_class limit = mpz_class(1) << 30;
  const bool small = std::all_of(coords.begin(), coords.end(), [&](const mpz_class& c) { return abs(c) < limit; });

  Point v(a.dim());
  if (small) {
    IntPoints<std::int64_t> pts{a.size(), d, {}};
    pts.c.reserve(coords.size());
    for (const auto& c : coords) pts.c.push_back(c.get_si());
    const auto best = choose_direction(pts, config);
    for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i)) = Rational(best[i]);
  } else {
    IntPoints<mpz_class> pts{a.size(), d, coords};
    const auto best = choose_direction(pts, config);
    for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i)) = Rational(best[i]);
  }
  return Direction::from(v);
}

LineDecomposition sqrt_cutoff_decompose(const PointSet& a, const StructureConfig& config) {
  if (a.size() < 2) throw DimensionError("sqrt_cutoff_decompose: need at least two points");
  LineDecomposition dec = fibers_along(a, best_direction(a, config));
  const std::size_t top = dec.fibers.front().members.size();
  std::size_t r = 0;
  while (r < dec.fibers.size() && dec.fibers[r].members.size() * dec.fibers[r].members.size() >= top) ++r;
  dec.r_selected = r;
  std::vector<Point> rest;
  for (std::size_t i = r; i < dec.fibers.size(); ++i) {
    rest.insert(rest.end(), dec.fibers[i].members.begin(), dec.fibers[i].members.end());
  }
  dec.leftover = PointSet(a.dim(), std::move(rest));
  return dec;
}

namespace {

std::size_t count_lines(const PointSet& s, const Direction& dir) {
  std::vector<Point> bases;
  bases.reserve(s.size());
  for (const auto& p : s) bases.push_back(line_base(p, dir));
  return PointSet(s.dim(), std::move(bases)).size();
}

}  // namespace

GridProfile grid_profile(const PointSet& a, const LinearMap& map, const StructureConfig& config) {
  if (a.dim() != 2 || map.dim() != 2) throw DimensionError("grid_profile: defined in the plane only");
  if (!has_no_real_eigenvalue(map)) throw DimensionError("grid_profile: map has a real eigenvalue");
  if (a.empty()) throw DimensionError("grid_profile: empty set");
  const LinearMap inv = map.inverse();

  if (a.size() == 1) {
    Direction e1 = Direction::from(make_point({1, 0}));
    Direction d2 = Direction::from(inv.apply(e1.vector()));
    return {e1, 1, d2, 1, a, PointSet(2)};
  }
  const LineDecomposition dec = sqrt_cutoff_decompose(a, config);
  GridProfile g{dec.direction, dec.r_selected, Direction::from(inv.apply(dec.direction.vector())), 0, dec.kept(),
                dec.leftover};
  g.r2 = count_lines(g.S, g.dir2);
  return g;
}

// ---------------------------------------------------------------------------
// Verification

DecompositionCheck verify_decomposition(const PointSet& a, const LineDecomposition& decomp, DecompositionKind kind) {
  DecompositionCheck check;
  auto fail = [&](const std::string& msg) {
    if (std::find(check.diagnosis.begin(), check.diagnosis.end(), msg) == check.diagnosis.end()) {
      check.diagnosis.push_back(msg);
    }
  };

  if (decomp.direction.dim() != a.dim()) {
    fail("direction has wrong length");
    return check;
  }
  if (!(Direction::from(decomp.direction.vector()) == decomp.direction)) fail("direction not canonical");

  std::vector<Point> all;
  for (const auto& f : decomp.fibers) {
    if (f.members.empty()) fail("empty fiber");
    if (f.members.dim() != a.dim() || f.base.size() != a.dim()) {
      fail("fiber has wrong dimension");
      continue;
    }
    for (const auto& p : f.members) {
      if (!a.contains(p)) fail("point outside input");
      if (!points_equal(line_base(p, decomp.direction), f.base)) fail("fiber not collinear");
      all.push_back(p);
    }
  }
  const PointSet cover(a.dim(), all);
  if (cover.size() != all.size()) fail("fibers overlap");
  for (const auto& p : a) {
    if (!cover.contains(p)) {
      fail("cover incomplete");
      break;
    }
  }

  for (std::size_t i = 1; i < decomp.fibers.size(); ++i) {
    const auto& x = decomp.fibers[i - 1];
    const auto& y = decomp.fibers[i];
    if (x.members.size() < y.members.size() ||
        (x.members.size() == y.members.size() && !lex_less(x.base, y.base))) {
      fail("fiber order violated");
    }
  }

  if (decomp.r_selected > decomp.fibers.size()) {
    fail("r_selected exceeds fiber count");
    return check;
  }
  std::vector<Point> dropped;
  for (std::size_t i = decomp.r_selected; i < decomp.fibers.size(); ++i) {
    dropped.insert(dropped.end(), decomp.fibers[i].members.begin(), decomp.fibers[i].members.end());
  }
  if (!(PointSet(a.dim(), dropped) == decomp.leftover)) fail("leftover mismatch");

  if (kind == DecompositionKind::cover) {
    if (decomp.r_selected != decomp.fibers.size()) fail("cover must keep every fiber");
  } else if (!decomp.fibers.empty()) {
    const std::size_t top = decomp.fibers.front().members.size();
    for (std::size_t i = 0; i < decomp.fibers.size(); ++i) {
      const std::size_t sz = decomp.fibers[i].members.size();
      const bool passes = sz * sz >= top;
      if (passes != (i < decomp.r_selected)) fail("cutoff violated");
    }
  }
  return check;
}

DecompositionCheck verify_grid_profile(const PointSet& a, const GridProfile& g) {
  DecompositionCheck check;
  auto fail = [&](const std::string& msg) { check.diagnosis.push_back(msg); };
  if (g.dir1 == g.dir2) fail("directions are parallel");
  if (!(set_union(g.S, g.B) == a) || g.S.size() + g.B.size() != a.size()) fail("S and B do not partition the input");
  if (!g.S.empty()) {
    if (count_lines(g.S, g.dir1) != g.r1) fail("r1 does not match the lines of S along dir1");
    if (count_lines(g.S, g.dir2) != g.r2) fail("r2 does not match the lines of S along dir2");
  }
  return check;
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

std::string points_inline(const PointSet& s) {
  std::string out;
  bool first = true;
  for (const auto& p : s) {
    if (!first) out += " ; ";
    out += format_point(p);
    first = false;
  }
  return out;
}

struct LineReader {
  explicit LineReader(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
      ++no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      if (line.back() == '\r') line.pop_back();
      lines.emplace_back(no, line.substr(first));
    }
  }

  std::pair<std::size_t, std::string> next(const char* what) {
    if (pos >= lines.size()) throw ParseError(lines.empty() ? 0 : lines.back().first, std::string("missing ") + what);
    return lines[pos++];
  }

  /// Reads "<keyword> <rest>" and returns rest.
  std::pair<std::size_t, std::string> keyed(const std::string& keyword) {
    auto [no, line] = next(keyword.c_str());
    if (line.rfind(keyword, 0) != 0 || (line.size() > keyword.size() && line[keyword.size()] != ' ')) {
      throw ParseError(no, "expected '" + keyword + "'");
    }
    return {no, line.size() > keyword.size() ? line.substr(keyword.size() + 1) : ""};
  }

  std::size_t count(const std::string& keyword) {
    auto [no, rest] = keyed(keyword);
    try {
      std::size_t used = 0;
      const long v = std::stol(rest, &used);
      if (used != rest.size() || v < 0) throw std::invalid_argument("bad");
      return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw ParseError(no, "malformed count for '" + keyword + "'");
    }
  }

  Point point(std::size_t no, std::string_view text, Eigen::Index dim) {
    try {
      Point p = parse_point(text);
      if (p.size() != dim) throw std::invalid_argument("expected " + std::to_string(dim) + " coordinates");
      return p;
    } catch (const std::exception& e) {
      throw ParseError(no, e.what());
    }
  }

  Direction direction(const std::string& keyword, Eigen::Index dim) {
    auto [no, rest] = keyed(keyword);
    try {
      return Direction::from(point(no, rest, dim));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(no, e.what());
    }
  }

  PointSet block(const std::string& keyword, Eigen::Index dim) {
    const std::size_t n = count(keyword);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) {
      auto [no, line] = next("point");
      pts.push_back(point(no, line, dim));
    }
    return PointSet(dim, std::move(pts));
  }

  void header(const std::string& magic) {
    auto [no, line] = next(magic.c_str());
    if (line != magic) throw ParseError(no, "expected '" + magic + "'");
  }

  Eigen::Index dim() {
    const auto d = count("dim");
    if (d < 1) throw ParseError(lines[pos - 1].first, "dimension must be positive");
    return static_cast<Eigen::Index>(d);
  }

  std::vector<std::pair<std::size_t, std::string>> lines;
  std::size_t pos = 0;
};

std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto at = s.find(sep, start);
    parts.push_back(s.substr(start, at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

}  // namespace

std::string format_decomposition(const LineDecomposition& decomp) {
  std::ostringstream out;
  out << "line-decomposition\n";
  out << "dim " << decomp.direction.dim() << '\n';
  out << "direction " << format_point(decomp.direction.vector()) << '\n';
  out << "r_selected " << decomp.r_selected << '\n';
  out << "fibers " << decomp.fibers.size() << '\n';
  for (const auto& f : decomp.fibers) {
    out << format_point(f.base) << " | " << f.members.size() << " | " << points_inline(f.members) << '\n';
  }
  out << "leftover " << decomp.leftover.size() << '\n';
  for (const auto& p : decomp.leftover) out << format_point(p) << '\n';
  return out.str();
}

LineDecomposition parse_decomposition(std::string_view text) {
  LineReader rd(text);
  rd.header("line-decomposition");
  const Eigen::Index dim = rd.dim();
  Direction dir = rd.direction("direction", dim);
  const std::size_t r = rd.count("r_selected");
  const std::size_t nf = rd.count("fibers");
  std::vector<Fiber> fibers;
  for (std::size_t i = 0; i < nf; ++i) {
    auto [no, line] = rd.next("fiber");
    const auto parts = split_on(line, '|');
    if (parts.size() != 3) throw ParseError(no, "fiber line must be 'base | size | members'");
    Point base = rd.point(no, parts[0], dim);
    std::vector<Point> members;
    for (auto m : split_on(parts[2], ';')) members.push_back(rd.point(no, m, dim));
    PointSet ms(dim, std::move(members));
    std::size_t declared = 0;
    try {
      declared = std::stoul(std::string(parts[1]));
    } catch (const std::exception&) {
      throw ParseError(no, "malformed fiber size");
    }
    if (declared != ms.size()) throw ParseError(no, "fiber size does not match its members");
    fibers.push_back({std::move(base), std::move(ms)});
  }
  PointSet leftover = rd.block("leftover", dim);
  return {std::move(dir), std::move(fibers), std::move(leftover), r};
}

std::string format_grid_profile(const GridProfile& g) {
  std::ostringstream out;
  out << "grid-profile\n";
  out << "dim " << g.dir1.dim() << '\n';
  out << "dir1 " << format_point(g.dir1.vector()) << '\n';
  out << "r1 " << g.r1 << '\n';
  out << "dir2 " << format_point(g.dir2.vector()) << '\n';
  out << "r2 " << g.r2 << '\n';
  out << "S " << g.S.size() << '\n';
  for (const auto& p : g.S) out << format_point(p) << '\n';
  out << "B " << g.B.size() << '\n';
  for (const auto& p : g.B) out << format_point(p) << '\n';
  return out.str();
}

GridProfile parse_grid_profile(std::string_view text) {
  LineReader rd(text);
  rd.header("grid-profile");
  const Eigen::Index dim = rd.dim();
  Direction d1 = rd.direction("dir1", dim);
  const std::size_t r1 = rd.count("r1");
  Direction d2 = rd.direction("dir2", dim);
  const std::size_t r2 = rd.count("r2");
  PointSet s = rd.block("S", dim);
  PointSet b = rd.block("B", dim);
  return {std::move(d1), r1, std::move(d2), r2, std::move(s), std::move(b)};
}

}  // namespace addcomb
