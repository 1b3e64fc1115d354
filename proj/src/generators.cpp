#include "addcomb/generators.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "addcomb/io.hpp"
#include "addcomb/random.hpp"

namespace addcomb {

namespace {

Point unit(Eigen::Index d, Eigen::Index i, long scale = 1) {
  Point p = Point::Constant(d, Rational(0));
  p(i) = Rational(scale);
  return p;
}

std::string coeffs_str(const std::vector<long>& u) {
  std::string s = "(";
  for (std::size_t i = 0; i < u.size(); ++i) s += (i ? "," : "") + std::to_string(u[i]);
  return s + ")";
}

}  // namespace

ProgressionCollision::ProgressionCollision(std::vector<long> first, std::vector<long> second, Point point)
    : std::invalid_argument("progression is not proper: coefficients " + coeffs_str(first) + " and " +
                            coeffs_str(second) + " both give " + format_point(point)),
      first_(std::move(first)),
      second_(std::move(second)),
      point_(std::move(point)) {}

PointSet gen_AN(Eigen::Index d, long N) {
  if (d < 1) throw std::invalid_argument("gen_AN: d must be >= 1");
  if (N < d) throw std::invalid_argument("gen_AN: need N >= d");
  std::vector<Point> pts;
  for (Eigen::Index i = 0; i < d; ++i) pts.push_back(unit(d, i));
  for (long k = 2; k <= N; ++k) pts.push_back(unit(d, 0, k));
  return PointSet(d, std::move(pts));
}

PointSet gen_BN(long N) {
  if (N < 1) throw std::invalid_argument("gen_BN: N must be >= 1");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(N * N));
  for (long a = 0; a < N; ++a) {
    for (long b = 0; b < N; ++b) pts.push_back(make_point({a, b}));
  }
  return PointSet(2, std::move(pts));
}

PointSet gen_CN(long N) {
  if (N < 2) throw std::invalid_argument("gen_CN: N must be >= 2");
  std::vector<Point> pts;
  for (long y = 0; y <= 1; ++y) {
    for (long t = 1; t < N; ++t) pts.push_back(make_point({t, y}));
  }
  return PointSet(2, std::move(pts));
}

PointSet gen_ap(const Point& start, const Point& step, long n) {
  if (start.size() != step.size()) throw DimensionError("gen_ap: start and step differ in length");
  if (n < 1) throw std::invalid_argument("gen_ap: n must be >= 1");
  bool zero = true;
  for (Eigen::Index i = 0; i < step.size(); ++i) zero = zero && step(i).is_zero();
  if (zero) throw std::invalid_argument("gen_ap: step must be nonzero");
  std::vector<Point> pts;
  Point cur = start;
  for (long k = 0; k < n; ++k) {
    pts.push_back(cur);
    cur += step;
  }
  return PointSet(start.size(), std::move(pts));
}

PointSet gen_proper_progression(const ProperProgression& p) {
  const Eigen::Index d = p.v0.size();
  std::size_t total = 1;
  for (const auto& [v, len] : p.generators) {
    if (v.size() != d) throw DimensionError("progression generator has wrong length");
    if (len < 1) throw std::invalid_argument("progression lengths must be positive");
    total *= static_cast<std::size_t>(len);
  }

  std::vector<std::pair<Point, std::vector<long>>> sums;
  sums.reserve(total);
  std::vector<long> u(p.generators.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Point x = p.v0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i]) x += p.generators[i].first * Rational(u[i]);
    }
    sums.emplace_back(std::move(x), u);
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (++u[i] < p.generators[i].second) break;
      u[i] = 0;
    }
  }

  std::stable_sort(sums.begin(), sums.end(), [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  for (std::size_t i = 1; i < sums.size(); ++i) {
    if (points_equal(sums[i - 1].first, sums[i].first)) {
      throw ProgressionCollision(sums[i - 1].second, sums[i].second, sums[i].first);
    }
  }
  std::vector<Point> pts;
  pts.reserve(sums.size());
  for (auto& s : sums) pts.push_back(std::move(s.first));
  return PointSet(d, std::move(pts));
}

PointSet gen_random_box(Eigen::Index d, long side, std::size_t n, std::uint64_t seed) {
  if (d < 1 || side < 1) throw std::invalid_argument("gen_random_box: need d >= 1 and side >= 1");
  std::uint64_t cells = 1;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (cells > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(side)) {
      throw std::invalid_argument("gen_random_box: box too large");
    }
    cells *= static_cast<std::uint64_t>(side);
  }
  if (n < 1 || n > cells) throw std::invalid_argument("gen_random_box: need 1 <= n <= side^d");

  // Floyd: one draw per element, independent of the chosen representation.
  CounterRng rng(seed);
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = cells - n; j < cells; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }

  std::vector<Point> pts;
  pts.reserve(n);
  for (std::uint64_t cell : chosen) {
    Point p(d);
    for (Eigen::Index i = d - 1; i >= 0; --i) {
      p(i) = Rational(static_cast<long>(cell % static_cast<std::uint64_t>(side)));
      cell /= static_cast<std::uint64_t>(side);
    }
    pts.push_back(std::move(p));
  }
  return PointSet(d, std::move(pts));
}

}  // namespace addcomb
