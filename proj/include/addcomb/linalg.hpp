#pragma once

// Exact elimination over Eigen dense types. Eigen's own LU/QR pick pivots by
// magnitude against a threshold, which is meaningless for exact scalars; these
// routines pivot on the first nonzero entry and never round.

#include <limits>
#include <optional>
#include <utility>

#include <Eigen/Core>

namespace addcomb {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

/// In-place reduction to row echelon form over an exact field. Returns the
/// rank and the sign of the row permutation applied.
template <typename Scalar>
std::pair<Eigen::Index, int> echelon(MatrixX<Scalar>& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Eigen::Index rank = 0;
  int sign = 1;
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    Eigen::Index pivot = rank;
    while (pivot < rows && m(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      m.row(pivot).swap(m.row(rank));
      sign = -sign;
    }
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      if (m(r, col) == Scalar(0)) continue;
      const Scalar factor = m(r, col) / m(rank, col);
      for (Eigen::Index c = col; c < cols; ++c) m(r, c) -= factor * m(rank, c);
    }
    ++rank;
  }
  return {rank, sign};
}

}  // namespace detail

/// Rank over the scalar field, computed exactly.
template <typename Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& m) {
  MatrixX<typename Derived::Scalar> work = m;
  return detail::echelon(work).first;
}

template <typename Derived>
typename Derived::Scalar exact_determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  eigen_assert(m.rows() == m.cols());
  MatrixX<Scalar> work = m;
  const auto [rank, sign] = detail::echelon(work);
  if (rank < work.rows()) return Scalar(0);
  Scalar det(sign);
  for (Eigen::Index i = 0; i < work.rows(); ++i) det *= work(i, i);
  return det;
}

/// Gauss-Jordan inverse; nullopt when singular.
template <typename Derived>
std::optional<MatrixX<typename Derived::Scalar>> exact_inverse(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  eigen_assert(m.rows() == m.cols());
  const Eigen::Index n = m.rows();
  MatrixX<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = MatrixX<Scalar>::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && aug(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) aug.row(pivot).swap(aug.row(col));
    const Scalar inv = Scalar(1) / aug(col, col);
    for (Eigen::Index c = 0; c < 2 * n; ++c) aug(col, c) *= inv;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || aug(r, col) == Scalar(0)) continue;
      const Scalar factor = aug(r, col);
      for (Eigen::Index c = 0; c < 2 * n; ++c) aug(r, c) -= factor * aug(col, c);
    }
  }
  return MatrixX<Scalar>(aug.rightCols(n));
}

/// Fraction-free (Bareiss) rank for integer matrices. Intermediate entries
/// are minors of the input, so a 64-bit scalar suffices whenever the
/// Hadamard bound of the input does; products are formed in 128 bits.
template <typename Derived>
Eigen::Index bareiss_rank(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  static_assert(std::numeric_limits<Scalar>::is_integer);
  MatrixX<Scalar> a = m;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Eigen::Index rank = 0;
  Scalar prev = 1;
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    Eigen::Index pivot = rank;
    while (pivot < rows && a(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) a.row(pivot).swap(a.row(rank));
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      for (Eigen::Index c = col + 1; c < cols; ++c) {
        const __int128 v = static_cast<__int128>(a(rank, col)) * a(r, c) -
                           static_cast<__int128>(a(r, col)) * a(rank, c);
        a(r, c) = static_cast<Scalar>(v / prev);
      }
      a(r, col) = 0;
    }
    prev = a(rank, col);
    ++rank;
  }
  return rank;
}

}  // namespace addcomb
