#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "addcomb/point_set.hpp"

namespace addcomb {

/// P = { v0 + u_1 v_1 + ... + u_s v_s : 0 <= u_i < L_i }.
struct ProperProgression {
  Point v0;
  std::vector<std::pair<Point, long>> generators;

  std::size_t arithmetic_dim() const { return generators.size(); }
};

/// Thrown when two distinct coefficient vectors of a progression give the
/// same point.
class ProgressionCollision : public std::invalid_argument {
 public:
  ProgressionCollision(std::vector<long> first, std::vector<long> second, Point point);
  const std::vector<long>& first() const { return first_; }
  const std::vector<long>& second() const { return second_; }
  const Point& point() const { return point_; }

 private:
  std::vector<long> first_, second_;
  Point point_;
};

/// {e_1, ..., e_d} u {2e_1, ..., N e_1}; requires N >= d >= 1.
PointSet gen_AN(Eigen::Index d, long N);

/// {0..N-1}^2; requires N >= 1.
PointSet gen_BN(long N);

/// {0, e_2} + {t e_1 : 1 <= t <= N-1}; requires N >= 2.
PointSet gen_CN(long N);

/// start + k step for 0 <= k < n.
PointSet gen_ap(const Point& start, const Point& step, long n);

PointSet gen_proper_progression(const ProperProgression& p);

/// n distinct uniform points of [0, side)^d drawn with Floyd's algorithm from
/// CounterRng(seed). Box cells are numbered with coordinate 0 most
/// significant.
PointSet gen_random_box(Eigen::Index d, long side, std::size_t n, std::uint64_t seed);

}  // namespace addcomb
