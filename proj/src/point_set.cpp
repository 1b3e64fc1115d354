#include "addcomb/point_set.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace addcomb {

Point make_point(std::initializer_list<Rational> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (const auto& c : coords) p(i++) = c;
  return p;
}

std::strong_ordering lex_compare(const Point& a, const Point& b) {
  eigen_assert(a.size() == b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (auto c = a(i) <=> b(i); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool points_equal(const Point& a, const Point& b) {
  return a.size() == b.size() && lex_compare(a, b) == 0;
}

// ---------------------------------------------------------------------------
// PointSet

PointSet::PointSet(Eigen::Index dim) : dim_(dim) {
  if (dim < 1) throw DimensionError("point set dimension must be positive");
}

PointSet::PointSet(Eigen::Index dim, std::vector<Point> points) : PointSet(dim) {
  for (const auto& p : points) {
    if (p.size() != dim) throw DimensionError("point length does not match set dimension");
  }
  std::sort(points.begin(), points.end(), lex_less);
  points.erase(std::unique(points.begin(), points.end(), points_equal), points.end());
  points_ = std::move(points);
}

PointSet::PointSet(Eigen::Index dim, std::initializer_list<std::initializer_list<long>> rows) : PointSet(dim) {
  std::vector<Point> pts;
  pts.reserve(rows.size());
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != dim) throw DimensionError("point length does not match set dimension");
    Point p(dim);
    Eigen::Index i = 0;
    for (long c : row) p(i++) = Rational(c);
    pts.push_back(std::move(p));
  }
  *this = PointSet(dim, std::move(pts));
}

bool PointSet::contains(const Point& p) const {
  if (p.size() != dim_) return false;
  return std::binary_search(points_.begin(), points_.end(), p, lex_less);
}

std::string PointSet::canonical_bytes() const {
  std::string out = "d:" + std::to_string(dim_) + ";";
  for (const auto& p : points_) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      if (i) out += ',';
      out += p(i).str();
    }
    out += ';';
  }
  return out;
}

bool operator==(const PointSet& a, const PointSet& b) {
  return a.dim_ == b.dim_ && a.points_.size() == b.points_.size() &&
         std::equal(a.points_.begin(), a.points_.end(), b.points_.begin(), points_equal);
}

std::strong_ordering operator<=>(const PointSet& a, const PointSet& b) {
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  if (auto c = a.points_.size() <=> b.points_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.points_.size(); ++i) {
    if (auto c = lex_compare(a.points_[i], b.points_[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

PointSet set_union(const PointSet& a, const PointSet& b) {
  if (a.dim() != b.dim()) throw DimensionError("union of point sets of different dimension");
  std::vector<Point> pts(a.points());
  pts.insert(pts.end(), b.begin(), b.end());
  return PointSet(a.dim(), std::move(pts));
}

PointSet set_difference(const PointSet& a, const PointSet& b) {
  std::vector<Point> pts;
  for (const auto& p : a) {
    if (!b.contains(p)) pts.push_back(p);
  }
  return PointSet(a.dim(), std::move(pts));
}

PointSet translate(const PointSet& a, const Point& t) {
  if (t.size() != a.dim()) throw DimensionError("translation vector has wrong length");
  std::vector<Point> pts;
  pts.reserve(a.size());
  for (const auto& p : a) pts.push_back(p + t);
  return PointSet(a.dim(), std::move(pts));
}

PointSet negate(const PointSet& a) {
  std::vector<Point> pts;
  pts.reserve(a.size());
  for (const auto& p : a) pts.push_back(-p);
  return PointSet(a.dim(), std::move(pts));
}

// ---------------------------------------------------------------------------
// LinearMap

LinearMap::LinearMap(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    throw DimensionError("linear map must be a non-empty square matrix");
  }
}

LinearMap LinearMap::identity(Eigen::Index dim) { return LinearMap(Matrix::Identity(dim, dim)); }

LinearMap LinearMap::scalar(Eigen::Index dim, const Rational& factor) {
  Matrix m = Matrix::Identity(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) m(i, i) = factor;
  return LinearMap(std::move(m));
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

LinearMap LinearMap::parse(std::string_view text) {
  const auto rows = split(trim(text), ';');
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto cells = split(rows[r], ',');
    if (static_cast<Eigen::Index>(cells.size()) != n) {
      throw std::invalid_argument("map row " + std::to_string(r + 1) + " does not have " + std::to_string(n) + " entries");
    }
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = Rational::parse(trim(cells[c]));
  }
  return LinearMap(std::move(m));
}

Rational LinearMap::trace() const {
  Rational t(0);
  for (Eigen::Index i = 0; i < dim(); ++i) t += entries_(i, i);
  return t;
}

LinearMap LinearMap::inverse() const {
  auto inv = exact_inverse(entries_);
  if (!inv) throw DimensionError("linear map is singular");
  return LinearMap(std::move(*inv));
}

Point LinearMap::apply(const Point& p) const {
  if (p.size() != dim()) throw DimensionError("point length does not match map dimension");
  Point out(dim());
  for (Eigen::Index r = 0; r < dim(); ++r) {
    Rational acc(0);
    for (Eigen::Index c = 0; c < dim(); ++c) {
      if (!entries_(r, c).is_zero() && !p(c).is_zero()) acc += entries_(r, c) * p(c);
    }
    out(r) = std::move(acc);
  }
  return out;
}

std::string LinearMap::str() const {
  std::string out;
  for (Eigen::Index r = 0; r < dim(); ++r) {
    if (r) out += ';';
    for (Eigen::Index c = 0; c < dim(); ++c) {
      if (c) out += ',';
      out += entries_(r, c).str();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Set operations

namespace {

void require_same_nonempty(const PointSet& a, const PointSet& b, const char* op) {
  if (a.dim() != b.dim()) throw DimensionError(std::string(op) + ": dimension mismatch");
  if (a.empty() || b.empty()) throw DimensionError(std::string(op) + ": empty operand");
}

}  // namespace

namespace {

/// Coordinates of `a` times `den`, flattened row by row, when every scaled
/// coordinate stays below 2^61 in magnitude (so sums and differences fit).
std::optional<std::vector<std::int64_t>> scaled_coords(const PointSet& a, const mpz_class& den) {
  static const mpz_class limit = mpz_class(1) << 61;
  std::vector<std::int64_t> flat;
  flat.reserve(a.size() * static_cast<std::size_t>(a.dim()));
  for (const auto& p : a) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      const mpz_class v = p(i).num() * (den / p(i).den());
      if (abs(v) >= limit) return std::nullopt;
      flat.push_back(v.get_si());
    }
  }
  return flat;
}

mpz_class common_denominator(const PointSet& a, const PointSet& b) {
  mpz_class den = 1;
  for (const auto* s : {&a, &b}) {
    for (const auto& p : *s) {
      for (Eigen::Index i = 0; i < p.size(); ++i) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p(i).den().get_mpz_t());
    }
  }
  return den;
}

PointSet from_scaled(Eigen::Index dim, const std::vector<std::int64_t>& flat, const mpz_class& den) {
  const auto d = static_cast<std::size_t>(dim);
  const std::size_t n = flat.size() / d;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto row = [&](std::size_t i) { return flat.begin() + static_cast<std::ptrdiff_t>(i * d); };
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::lexicographical_compare(row(x), row(x) + static_cast<std::ptrdiff_t>(d), row(y), row(y) + static_cast<std::ptrdiff_t>(d));
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](std::size_t x, std::size_t y) { return std::equal(row(x), row(x) + static_cast<std::ptrdiff_t>(d), row(y)); }),
              order.end());
  std::vector<Point> pts;
  pts.reserve(order.size());
  for (std::size_t i : order) {
    Point p(dim);
    for (std::size_t c = 0; c < d; ++c) p(static_cast<Eigen::Index>(c)) = Rational(mpz_class(static_cast<long>(flat[i * d + c])), den);
    pts.push_back(std::move(p));
  }
  return PointSet(dim, std::move(pts));
}

/// {x + sign * y : x in a, y in b}.
PointSet pairwise(const PointSet& a, const PointSet& b, int sign) {
  const mpz_class den = common_denominator(a, b);
  const auto xa = scaled_coords(a, den);
  const auto xb = xa ? scaled_coords(b, den) : std::nullopt;
  if (xa && xb) {
    const auto d = static_cast<std::size_t>(a.dim());
    std::vector<std::int64_t> flat;
    flat.reserve(a.size() * b.size() * d);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        for (std::size_t c = 0; c < d; ++c) flat.push_back((*xa)[i * d + c] + sign * (*xb)[j * d + c]);
      }
    }
    return from_scaled(a.dim(), flat, den);
  }
  std::vector<Point> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.emplace_back(sign > 0 ? Point(x + y) : Point(x - y));
  }
  return PointSet(a.dim(), std::move(out));
}

}  // namespace

PointSet sumset(const PointSet& a, const PointSet& b) {
  require_same_nonempty(a, b, "sumset");
  return pairwise(a, b, 1);
}

PointSet difference_set(const PointSet& a, const PointSet& b) {
  require_same_nonempty(a, b, "difference_set");
  return pairwise(a, b, -1);
}

Dilated dilate(const Rational& q, const PointSet& a) {
  if (a.empty()) throw DimensionError("dilate: empty operand");
  std::vector<Point> pts;
  pts.reserve(a.size());
  for (const auto& p : a) pts.emplace_back(p * q);
  return {PointSet(a.dim(), std::move(pts)), q.is_zero()};
}

PointSet dilate_sum(const Rational& q, const Rational& s, const PointSet& a) {
  return sumset(dilate(q, a).set, dilate(s, a).set);
}

PointSet apply_map(const LinearMap& map, const PointSet& a) {
  if (map.dim() != a.dim()) throw DimensionError("apply_map: dimension mismatch");
  std::vector<Point> pts;
  pts.reserve(a.size());
  for (const auto& p : a) pts.push_back(map.apply(p));
  return PointSet(a.dim(), std::move(pts));
}

PointSet transform_sum(const PointSet& a, const LinearMap& map) {
  if (map.dim() != a.dim()) throw DimensionError("transform_sum: dimension mismatch");
  if (!map.invertible()) throw DimensionError("transform_sum: map is not invertible");
  return sumset(a, apply_map(map, a));
}

PointSet multi_map_sum(const PointSet& a, const std::vector<LinearMap>& maps) {
  if (maps.empty()) throw DimensionError("multi_map_sum: no maps");
  PointSet acc = apply_map(maps.front(), a);
  for (std::size_t i = 1; i < maps.size(); ++i) acc = sumset(acc, apply_map(maps[i], a));
  return acc;
}

Eigen::Index affine_dim(const PointSet& a) {
  if (a.empty()) throw DimensionError("affine_dim: empty set");
  if (a.size() == 1) return 0;
  Matrix diffs(static_cast<Eigen::Index>(a.size() - 1), a.dim());
  for (std::size_t i = 1; i < a.size(); ++i) diffs.row(static_cast<Eigen::Index>(i - 1)) = (a[i] - a[0]).transpose();
  return exact_rank(diffs);
}

bool has_no_real_eigenvalue(const LinearMap& map) {
  if (map.dim() != 2) throw DimensionError("has_no_real_eigenvalue: defined for 2 x 2 maps only");
  const Rational t = map.trace();
  return t * t - Rational(4) * map.determinant() < Rational(0);
}

Point primitive_integer_vector(const Point& v) {
  mpz_class lcm = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v(i).den().get_mpz_t());
  std::vector<mpz_class> ints(static_cast<std::size_t>(v.size()));
  mpz_class content = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    ints[i] = v(i).num() * (lcm / v(i).den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ints[i].get_mpz_t());
  }
  if (content == 0) throw DimensionError("zero vector has no direction");
  Point out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Rational(mpz_class(ints[i] / content));
  return out;
}

namespace {

Point canonical_sign(Point v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i).is_zero()) continue;
    if (v(i).sign() < 0) v = -v;
    break;
  }
  return v;
}

}  // namespace

bool parallel(const Point& u, const Point& v) {
  if (u.size() != v.size()) return false;
  return points_equal(canonical_sign(primitive_integer_vector(u)), canonical_sign(primitive_integer_vector(v)));
}

bool is_collinear(const PointSet& a) { return a.empty() || affine_dim(a) <= 1; }

Point line_direction(const PointSet& a) {
  if (a.size() < 2 || !is_collinear(a)) throw DimensionError("line_direction: need a collinear set of at least two points");
  return canonical_sign(primitive_integer_vector(a[1] - a[0]));
}

}  // namespace addcomb
