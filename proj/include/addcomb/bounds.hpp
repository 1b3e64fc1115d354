#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "addcomb/point_set.hpp"
#include "addcomb/structure.hpp"

namespace addcomb {

/// A checker's hypotheses do not hold for the given operands.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class BoundKind {
  /// Holds for every valid input; a failure means a library defect.
  unconditional,
  /// Main term of an asymptotic bound; negative slack is informational.
  asymptotic,
  /// Open conjecture, informational only.
  conjectural,
};

/// How lhs is compared with rhs_main (+/- constant_param).
enum class Relation { at_least, at_most, equal };

enum class Verdict { holds, fails, straddles };

const char* to_string(BoundKind k);
const char* to_string(Relation r);
const char* to_string(Verdict v);

/// One evaluated inequality. slack = lhs - rhs_main exactly.
struct BoundReport {
  std::string inequality;
  BoundKind kind = BoundKind::unconditional;
  Relation relation = Relation::at_least;
  std::int64_t lhs = 0;
  Rational rhs_main;
  std::optional<Rational> constant_param;
  Rational slack;
  std::optional<bool> holds;
  std::string inputs_digest;
  /// Extra named exact quantities, serialized as flat fields.
  std::vector<std::pair<std::string, std::string>> details;

  bool unconditional_violation() const { return kind == BoundKind::unconditional && holds && !*holds; }
  const std::string* detail(const std::string& key) const;
};

/// Serializes as one JSON object on one line; rationals as "num/den".
std::string to_json_line(const BoundReport& r);

/// K_{q,s,d} = d(d+1) c_qs + d(d+1) + c_qs for a caller-supplied c_qs.
struct KConstant {
  long q;
  long s;
  long d;
  Rational c_qs;
  Rational value;
};

KConstant k_constant(long q, long s, long d, const Rational& c_qs);

// Every checker validates its hypotheses and throws HypothesisError (or
// DimensionError for malformed operands) instead of proceeding.

/// |qA + sA| against (|q| + |s| + 2d - 2)|A|; gcd(q, s) = 1, qs > 1, A full-dimensional.
BoundReport check_dilate_main(const PointSet& a, long q, long s);

/// |A + L(A)| against 4|A|; d = 2, L without real eigenvalues.
BoundReport check_transform_main(const PointSet& a, const LinearMap& map);

/// |U||V - W| <= |U - V||U - W|.
BoundReport check_ruzsa_triangle(const PointSet& u, const PointSet& v, const PointSet& w);

/// |U + V| <= |U - V|^3 / (|U||V|).
BoundReport check_ruzsa_sum_diff(const PointSet& u, const PointSet& v);

/// |A + B| >= |A| + d|B| - d(d+1)/2 when |A| >= |B| and dim(A + B) = d.
BoundReport check_ruzsa_dim(const PointSet& a, const PointSet& b);

/// |A + B| >= |A| + |B| - 1.
BoundReport check_trivial_lower(const PointSet& a, const PointSet& b);

/// |A + B| >= (|A|/r1 + |B|/r2 - 1)(r1 + r2 - 1), r_i = lines parallel to
/// `direction` meeting A resp. B. Plane only.
BoundReport check_gs(const PointSet& a, const PointSet& b, const Point& direction);

/// |qA + sA| against (|q| + |s|)|A| - C_{q,s} for collinear A; q, s distinct
/// and coprime. The slack is the constant this instance needs.
BoundReport check_onedim_dilate(const PointSet& a, long q, long s,
                                const std::optional<Rational>& c_param = std::nullopt);

/// |A1 + L(A2)| = |A1||A2| for A1, A2 on parallel lines and L without real
/// eigenvalues.
BoundReport check_lin_product(const PointSet& a1, const PointSet& a2, const LinearMap& map);

/// With c = |A + L(A)|/|A|: |A - A| <= c^2|A| and |A + A| <= c^6|A|. The
/// report's lhs/rhs are the second inequality; the first is in details.
BoundReport check_doubling_chain(const PointSet& a, const LinearMap& map);

/// |qA + sA| >= (|q| + |s| + 2d - 2)|A| - K r for A covered by the r
/// parallel lines of `decomp`.
BoundReport check_lines_bound(const PointSet& a, long q, long s, const LineDecomposition& decomp, const Rational& c_qs);

/// |A + L(A)| against |A|(r2/r1 + r1/r2 + 2) for the grid profile of (A, L).
BoundReport check_grid_bound(const PointSet& a, const LinearMap& map, const GridProfile& profile);

/// Exact enclosure [lo, hi] of a real number; lo == hi when exact.
struct RationalInterval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
};

/// Encloses x^(1/k) for rational x >= 0 with width below `max_width`.
RationalInterval root_interval(const Rational& x, unsigned k, const Rational& max_width);

/// (|det L_1|^(1/d) + ... + |det L_k|^(1/d))^d, enclosed to width < 10^-30.
RationalInterval determinant_main_factor(const std::vector<LinearMap>& maps, Eigen::Index d);

/// |L_1(A) + ... + L_k(A)| against (sum |det L_i|^(1/d))^d |A|. Conjectural;
/// rhs_main is the lower end of the enclosure, details carry both ends and a
/// three-valued verdict.
BoundReport probe_bukh_conjecture(const PointSet& a, const std::vector<LinearMap>& maps);

}  // namespace addcomb
