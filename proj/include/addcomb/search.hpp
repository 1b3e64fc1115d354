#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "addcomb/point_set.hpp"

namespace addcomb {

/// q.A + s.A
struct DilateSumObjective {
  long q;
  long s;
};

/// A + L(A)
struct TransformSumObjective {
  LinearMap map;
};

/// L_1(A) + ... + L_k(A)
struct MultiMapObjective {
  std::vector<LinearMap> maps;
};

using Objective = std::variant<DilateSumObjective, TransformSumObjective, MultiMapObjective>;

std::string describe(const Objective& objective);

/// The objective's cardinality on A, computed through the set operations.
std::int64_t evaluate_objective(const Objective& objective, const PointSet& a);

/// All n-subsets of the box {0, ..., box_side - 1}^dim.
struct SearchSpec {
  Eigen::Index dim = 1;
  long box_side = 1;
  long n = 1;
  Objective objective = DilateSumObjective{1, 2};
  /// Only sets with affine dimension equal to dim.
  bool full_dimensional = false;
};

/// Throws std::invalid_argument on a malformed spec or unmet hypotheses.
void validate(const SearchSpec& spec);

struct SearchOptions {
  /// Refuse when C(box_side^dim, n) exceeds this.
  std::uint64_t node_budget = 1'000'000'000;
  unsigned threads = 1;
  std::size_t witness_cap = 16;
  /// Prefix length at which the tree is split into tasks.
  int split_depth = 2;
};

struct SearchResult {
  std::int64_t min_value = 0;
  /// Lexicographically first canonical minimizers, at most witness_cap.
  std::vector<PointSet> witnesses;
  std::size_t witness_cap = 0;
  /// Distinct canonical forms achieving min_value.
  std::uint64_t canonical_classes = 0;
  mpz_class space_size;
  /// Depends on scheduling; not part of the deterministic output.
  std::uint64_t nodes_explored = 0;
  double runtime_ms = 0;
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(mpz_class space, std::uint64_t budget);
  const mpz_class& space_size() const { return space_; }

 private:
  mpz_class space_;
};

class InfeasibleSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// C(box_side^dim, n).
mpz_class search_space_size(const SearchSpec& spec);

/// Symmetries commuting with the objective: signed coordinate permutations
/// for dilate sums, the identity otherwise. Translations are always factored out.
struct SymmetryGroup {
  Eigen::Index dim;
  bool signed_permutations;

  static SymmetryGroup of(const Objective& objective, Eigen::Index dim);
  std::size_t order() const;
  /// Element g in [0, order()).
  PointSet apply(std::size_t g, const PointSet& a) const;
};

/// Lexicographically least image of A over the group, translated so that
/// its lexicographic minimum is the origin.
PointSet canonicalize(const PointSet& a, const SymmetryGroup& group);
PointSet canonicalize(const PointSet& a, const Objective& objective);

SearchResult minimize(const SearchSpec& spec, const SearchOptions& options = {});

struct SlackRow {
  long n;
  std::int64_t min_value;
  Rational main_term;
  Rational slack;
};

/// (|q| + |s| + 2d - 2) n for dilate sums, 4n for transform sums and the
/// lower end of the determinant bound for multi-map sums.
Rational main_term(const SearchSpec& spec);

std::vector<SlackRow> slack_profile(SearchSpec spec, long n_min, long n_max, const SearchOptions& options = {});

/// Deterministic result table (no timing or node counts).
std::string format_search_result(const SearchSpec& spec, const SearchResult& result);

}  // namespace addcomb
