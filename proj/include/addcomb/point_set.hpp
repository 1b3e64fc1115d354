#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "addcomb/linalg.hpp"
#include "addcomb/rational.hpp"

namespace addcomb {

using Point = VectorX<Rational>;
using Matrix = MatrixX<Rational>;

/// Builds a point from integer or rational literals: make_point({1, 0}).
Point make_point(std::initializer_list<Rational> coords);

/// Lexicographic order on coordinates. Points must have equal length.
std::strong_ordering lex_compare(const Point& a, const Point& b);
inline bool lex_less(const Point& a, const Point& b) { return lex_compare(a, b) < 0; }
bool points_equal(const Point& a, const Point& b);

/// Operand-shape violations (dimension mismatch, empty operand, singular map).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite deduplicated set of points in Q^d. Points are kept sorted
/// lexicographically, which fixes every iteration order in the library.
class PointSet {
 public:
  explicit PointSet(Eigen::Index dim);
  /// Duplicates are merged.
  PointSet(Eigen::Index dim, std::vector<Point> points);
  /// Convenience for tests and generators: integer rows.
  PointSet(Eigen::Index dim, std::initializer_list<std::initializer_list<long>> rows);

  Eigen::Index dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  const std::vector<Point>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }

  bool contains(const Point& p) const;

  /// Canonical byte encoding: "d:<dim>;" then "c,c,...;" per point in order.
  std::string canonical_bytes() const;

  friend bool operator==(const PointSet& a, const PointSet& b);
  /// Same-size sets compare by their sorted point sequences; otherwise by size.
  friend std::strong_ordering operator<=>(const PointSet& a, const PointSet& b);

 private:
  Eigen::Index dim_;
  std::vector<Point> points_;
};

PointSet set_union(const PointSet& a, const PointSet& b);
PointSet set_difference(const PointSet& a, const PointSet& b);
PointSet translate(const PointSet& a, const Point& t);
PointSet negate(const PointSet& a);

/// d x d exact rational matrix acting on column vectors.
class LinearMap {
 public:
  explicit LinearMap(Matrix entries);

  static LinearMap identity(Eigen::Index dim);
  static LinearMap scalar(Eigen::Index dim, const Rational& factor);
  /// Row-major rational entries: "a/b,c/d;e/f,g/h".
  static LinearMap parse(std::string_view text);

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  const Rational& operator()(Eigen::Index r, Eigen::Index c) const { return entries_(r, c); }

  Rational determinant() const { return exact_determinant(entries_); }
  Rational trace() const;
  bool invertible() const { return !determinant().is_zero(); }
  /// Throws DimensionError when singular.
  LinearMap inverse() const;

  Point apply(const Point& p) const;

  /// Inverse of parse().
  std::string str() const;

  friend bool operator==(const LinearMap& a, const LinearMap& b) { return a.entries_ == b.entries_; }

 private:
  Matrix entries_;
};

PointSet sumset(const PointSet& a, const PointSet& b);
PointSet difference_set(const PointSet& a, const PointSet& b);

struct Dilated {
  PointSet set;
  /// q == 0: every point collapses onto the origin.
  bool degenerate = false;
};

Dilated dilate(const Rational& q, const PointSet& a);

/// q.A + s.A
PointSet dilate_sum(const Rational& q, const Rational& s, const PointSet& a);

PointSet apply_map(const LinearMap& map, const PointSet& a);

/// A + L(A); L must be invertible.
PointSet transform_sum(const PointSet& a, const LinearMap& map);

/// L_1(A) + ... + L_k(A), by iterated sumset.
PointSet multi_map_sum(const PointSet& a, const std::vector<LinearMap>& maps);

/// Dimension of the affine hull; throws on the empty set.
Eigen::Index affine_dim(const PointSet& a);

/// Exact test trace^2 - 4 det < 0. Only defined for 2 x 2 maps.
bool has_no_real_eigenvalue(const LinearMap& map);

/// Clears denominators and divides by the content: the primitive integer
/// vector with the same direction (sign preserved). Throws on zero.
Point primitive_integer_vector(const Point& v);

/// True iff every point lies on one line (sets of size <= 2 always do).
bool is_collinear(const PointSet& a);

/// Direction of a collinear set with |A| >= 2, as a primitive integer vector
/// with its first nonzero coordinate positive.
Point line_direction(const PointSet& a);

/// u and v (nonzero) are scalar multiples of each other.
bool parallel(const Point& u, const Point& v);

}  // namespace addcomb
