#pragma once

// Naive integer reference implementations used to cross-check the library.
// Nothing here touches the library's set types or arithmetic.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "addcomb/point_set.hpp"

namespace oracle {

using IPoint = std::vector<long>;
using ISet = std::set<IPoint>;
using IMatrix = std::vector<std::vector<long>>;

inline ISet sum(const ISet& a, const ISet& b) {
  ISet out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      IPoint z(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
      out.insert(z);
    }
  }
  return out;
}

inline ISet diff(const ISet& a, const ISet& b) {
  ISet out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      IPoint z(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
      out.insert(z);
    }
  }
  return out;
}

inline ISet scale(long q, const ISet& a) {
  ISet out;
  for (auto x : a) {
    for (auto& c : x) c *= q;
    out.insert(x);
  }
  return out;
}

inline ISet apply(const IMatrix& m, const ISet& a) {
  ISet out;
  for (const auto& x : a) {
    IPoint y(m.size(), 0);
    for (std::size_t r = 0; r < m.size(); ++r) {
      for (std::size_t c = 0; c < x.size(); ++c) y[r] += m[r][c] * x[c];
    }
    out.insert(y);
  }
  return out;
}

inline std::size_t dilate_sum(long q, long s, const ISet& a) { return sum(scale(q, a), scale(s, a)).size(); }

/// |A + M(A)| for an integer matrix M.
inline std::size_t transform_sum(const ISet& a, const IMatrix& m) { return sum(a, apply(m, a)).size(); }

/// Affine dimension by integer row reduction (small inputs only).
inline long affine_dim(const ISet& a) {
  if (a.size() <= 1) return 0;
  const IPoint& o = *a.begin();
  std::vector<std::vector<__int128>> rows;
  for (const auto& x : a) {
    std::vector<__int128> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - o[i];
    rows.push_back(r);
  }
  const std::size_t cols = o.size();
  long rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<long>(rows.size()); ++c) {
    std::size_t p = static_cast<std::size_t>(rank);
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[static_cast<std::size_t>(rank)]);
    const auto& piv = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      const __int128 f = rows[r][c];
      if (f == 0) continue;
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] = rows[r][k] * piv[c] - piv[k] * f;
      // Keep entries small.
      __int128 g = 0;
      for (auto v : rows[r]) {
        __int128 x = v < 0 ? -v : v;
        while (x) {
          const __int128 t = g % x;
          g = x;
          x = t;
        }
      }
      if (g > 1) {
        for (auto& v : rows[r]) v /= g;
      }
    }
    ++rank;
  }
  return rank;
}

inline ISet from(const addcomb::PointSet& s) {
  ISet out;
  for (const auto& p : s) {
    IPoint x(static_cast<std::size_t>(p.size()));
    for (Eigen::Index i = 0; i < p.size(); ++i) x[static_cast<std::size_t>(i)] = p(i).num().get_si();
    out.insert(x);
  }
  return out;
}

inline addcomb::PointSet to(long dim, const ISet& s) {
  std::vector<addcomb::Point> pts;
  for (const auto& x : s) {
    addcomb::Point p(dim);
    for (long i = 0; i < dim; ++i) p(i) = addcomb::Rational(x[static_cast<std::size_t>(i)]);
    pts.push_back(p);
  }
  return addcomb::PointSet(dim, std::move(pts));
}

/// Minimum of f over every n-subset of {0..side-1}^dim, no symmetry or pruning.
template <class F>
std::size_t naive_minimum(long dim, long side, long n, F f) {
  std::vector<IPoint> cells;
  long total = 1;
  for (long i = 0; i < dim; ++i) total *= side;
  for (long i = 0; i < total; ++i) {
    IPoint x(static_cast<std::size_t>(dim));
    long q = i;
    for (long c = dim - 1; c >= 0; --c) {
      x[static_cast<std::size_t>(c)] = q % side;
      q /= side;
    }
    cells.push_back(x);
  }
  std::size_t best = SIZE_MAX;
  std::vector<int> pick(static_cast<std::size_t>(total), 0);
  std::fill(pick.end() - n, pick.end(), 1);
  do {
    ISet a;
    for (long i = 0; i < total; ++i) {
      if (pick[static_cast<std::size_t>(i)]) a.insert(cells[static_cast<std::size_t>(i)]);
    }
    best = std::min(best, f(a));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

}  // namespace oracle
