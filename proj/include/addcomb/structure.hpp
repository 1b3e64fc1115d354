#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "addcomb/point_set.hpp"

namespace addcomb {

/// Line direction as a primitive integer vector whose first nonzero
/// coordinate is positive.
class Direction {
 public:
  /// Canonicalizes any nonzero rational vector; throws DimensionError on zero.
  static Direction from(const Point& v);

  const Point& vector() const { return v_; }
  Eigen::Index dim() const { return v_.size(); }

  friend bool operator==(const Direction& a, const Direction& b) { return points_equal(a.v_, b.v_); }
  friend std::strong_ordering operator<=>(const Direction& a, const Direction& b) { return lex_compare(a.v_, b.v_); }

 private:
  explicit Direction(Point v) : v_(std::move(v)) {}
  Point v_;
};

struct Fiber {
  /// Point of the line closest to the origin: p - (p.v / v.v) v.
  Point base;
  PointSet members;
};

/// Partition of a set into fibers along one direction. `fibers` holds every
/// fiber, largest first (ties by base point); the first r_selected are kept,
/// the members of the rest form `leftover`.
struct LineDecomposition {
  Direction direction;
  std::vector<Fiber> fibers;
  PointSet leftover;
  std::size_t r_selected = 0;

  PointSet kept() const;
};

struct GridProfile {
  Direction dir1;
  std::size_t r1 = 0;
  Direction dir2;
  std::size_t r2 = 0;
  PointSet S;
  PointSet B;
};

struct StructureConfig {
  /// Up to this many points every pairwise difference is a candidate.
  std::size_t full_scan_limit = 2000;
  /// Above it, candidates come from pairs of a sample of this size ...
  std::size_t sample_size = 2000;
  /// ... and this many of the best are re-scored on the whole set.
  std::size_t refine_candidates = 32;
  std::uint64_t sample_seed = 0x5a3d1e7b;
};

Point line_base(const Point& p, const Direction& dir);

/// Every fiber of A along dir; r_selected = number of fibers, leftover empty.
LineDecomposition fibers_along(const PointSet& a, const Direction& dir);

/// Difference direction maximizing the largest fiber; ties go to fewer
/// fibers, then to the lexicographically greatest direction. |A| >= 2.
Direction best_direction(const PointSet& a, const StructureConfig& config = {});

/// best_direction + fibers_along, then keeps the longest prefix of fibers
/// with |fiber_i|^2 >= |fiber_1|. |A| >= 2.
LineDecomposition sqrt_cutoff_decompose(const PointSet& a, const StructureConfig& config = {});

/// Two-direction grid profile for A under a 2 x 2 map without real
/// eigenvalues. A singleton yields the degenerate profile r1 = r2 = 1.
GridProfile grid_profile(const PointSet& a, const LinearMap& map, const StructureConfig& config = {});

enum class DecompositionKind {
  /// All fibers kept and leftover empty; no cutoff requirement.
  cover,
  /// Kept fibers satisfy |fiber_i|^2 >= |fiber_1|, dropped ones fail it.
  cutoff,
};

struct DecompositionCheck {
  std::vector<std::string> diagnosis;
  bool ok() const { return diagnosis.empty(); }
  explicit operator bool() const { return ok(); }
};

DecompositionCheck verify_decomposition(const PointSet& a, const LineDecomposition& decomp,
                                        DecompositionKind kind = DecompositionKind::cutoff);

DecompositionCheck verify_grid_profile(const PointSet& a, const GridProfile& profile);

std::string format_decomposition(const LineDecomposition& decomp);
LineDecomposition parse_decomposition(std::string_view text);

std::string format_grid_profile(const GridProfile& profile);
GridProfile parse_grid_profile(std::string_view text);

}  // namespace addcomb
