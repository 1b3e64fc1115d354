#include "addcomb/bounds.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "addcomb/digest.hpp"

namespace addcomb {

const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::unconditional: return "unconditional";
    case BoundKind::asymptotic: return "asymptotic";
    case BoundKind::conjectural: return "conjectural";
  }
  return "?";
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::at_least: return ">=";
    case Relation::at_most: return "<=";
    case Relation::equal: return "==";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::straddles: return "straddles";
  }
  return "?";
}

const std::string* BoundReport::detail(const std::string& key) const {
  for (const auto& [k, v] : details) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string to_json_line(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["inequality"] = r.inequality;
  j["kind"] = to_string(r.kind);
  j["relation"] = to_string(r.relation);
  j["lhs"] = r.lhs;
  j["rhs_main"] = r.rhs_main.fraction_str();
  if (r.constant_param) j["constant_param"] = r.constant_param->fraction_str();
  j["slack"] = r.slack.fraction_str();
  if (r.holds) j["holds"] = *r.holds;
  j["inputs_digest"] = r.inputs_digest;
  for (const auto& [k, v] : r.details) j[k] = v;
  return j.dump();
}

KConstant k_constant(long q, long s, long d, const Rational& c_qs) {
  const Rational dd(d * (d + 1));
  return {q, s, d, c_qs, dd * c_qs + dd + c_qs};
}

namespace {

std::int64_t card(const PointSet& a) { return static_cast<std::int64_t>(a.size()); }

Rational ratio(std::int64_t a, std::int64_t b) { return Rational(mpz_class(static_cast<long>(a)), mpz_class(static_cast<long>(b))); }

struct DigestBuilder {
  Digest d;
  DigestBuilder& set(const PointSet& a) {
    d.add(a.canonical_bytes());
    return *this;
  }
  DigestBuilder& map(const LinearMap& m) {
    d.add("map:" + m.str());
    return *this;
  }
  DigestBuilder& text(const std::string& s) {
    d.add(s);
    return *this;
  }
  std::string hex() const { return d.hex(); }
};

/// Fills slack and, when a constant is present, holds.
BoundReport finish(BoundReport r) {
  r.slack = Rational(static_cast<long>(r.lhs)) - r.rhs_main;
  if (r.constant_param) {
    const Rational lhs(static_cast<long>(r.lhs));
    const Rational& c = *r.constant_param;
    switch (r.relation) {
      case Relation::at_least: r.holds = lhs >= r.rhs_main - c; break;
      case Relation::at_most: r.holds = lhs <= r.rhs_main + c; break;
      case Relation::equal: r.holds = r.slack.abs() <= c; break;
    }
  }
  return r;
}

BoundReport make(std::string name, BoundKind kind, Relation rel, std::int64_t lhs, Rational rhs,
                 std::optional<Rational> c, std::string digest) {
  BoundReport r;
  r.inequality = std::move(name);
  r.kind = kind;
  r.relation = rel;
  r.lhs = lhs;
  r.rhs_main = std::move(rhs);
  r.constant_param = std::move(c);
  r.inputs_digest = std::move(digest);
  return r;
}

void require_nonempty(const PointSet& a, const char* who) {
  if (a.empty()) throw DimensionError(std::string(who) + ": empty operand");
}

void require_same_dim(const PointSet& a, const PointSet& b, const char* who) {
  if (a.dim() != b.dim()) throw DimensionError(std::string(who) + ": dimension mismatch");
}

void require_dilate_pair(long q, long s, const char* who) {
  if (std::gcd(std::labs(q), std::labs(s)) != 1) throw HypothesisError(std::string(who) + ": q and s must be coprime");
  if (!(q * s > 1)) throw HypothesisError(std::string(who) + ": need qs > 1");
}

void require_no_real_eigenvalue(const LinearMap& map, const char* who) {
  if (map.dim() != 2) throw HypothesisError(std::string(who) + ": map must be 2 x 2");
  if (!has_no_real_eigenvalue(map)) throw HypothesisError(std::string(who) + ": map has a real eigenvalue");
}

std::string qs_text(long q, long s) { return "q=" + std::to_string(q) + ",s=" + std::to_string(s); }

}  // namespace

BoundReport check_dilate_main(const PointSet& a, long q, long s) {
  require_nonempty(a, "check_dilate_main");
  require_dilate_pair(q, s, "check_dilate_main");
  if (affine_dim(a) != a.dim()) throw HypothesisError("check_dilate_main: A must be full-dimensional");
  const std::int64_t n = card(a);
  const long factor = std::labs(q) + std::labs(s) + 2 * static_cast<long>(a.dim()) - 2;
  auto r = make("dilate_main", BoundKind::asymptotic, Relation::at_least, card(dilate_sum(q, s, a)),
                Rational(factor) * Rational(static_cast<long>(n)), std::nullopt,
                DigestBuilder{}.text("dilate_main").text(qs_text(q, s)).set(a).hex());
  return finish(std::move(r));
}

BoundReport check_transform_main(const PointSet& a, const LinearMap& map) {
  require_nonempty(a, "check_transform_main");
  if (a.dim() != 2) throw HypothesisError("check_transform_main: A must lie in the plane");
  require_no_real_eigenvalue(map, "check_transform_main");
  auto r = make("transform_main", BoundKind::asymptotic, Relation::at_least, card(transform_sum(a, map)),
                Rational(4 * static_cast<long>(a.size())), std::nullopt,
                DigestBuilder{}.text("transform_main").map(map).set(a).hex());
  return finish(std::move(r));
}

BoundReport check_ruzsa_triangle(const PointSet& u, const PointSet& v, const PointSet& w) {
  for (const auto* x : {&u, &v, &w}) require_nonempty(*x, "check_ruzsa_triangle");
  require_same_dim(u, v, "check_ruzsa_triangle");
  require_same_dim(u, w, "check_ruzsa_triangle");
  const std::int64_t lhs = card(u) * card(difference_set(v, w));
  const std::int64_t rhs = card(difference_set(u, v)) * card(difference_set(u, w));
  auto r = make("ruzsa_triangle", BoundKind::unconditional, Relation::at_most, lhs, Rational(static_cast<long>(rhs)),
                Rational(0), DigestBuilder{}.text("ruzsa_triangle").set(u).set(v).set(w).hex());
  return finish(std::move(r));
}

BoundReport check_ruzsa_sum_diff(const PointSet& u, const PointSet& v) {
  require_nonempty(u, "check_ruzsa_sum_diff");
  require_nonempty(v, "check_ruzsa_sum_diff");
  require_same_dim(u, v, "check_ruzsa_sum_diff");
  const Rational diff(static_cast<long>(difference_set(u, v).size()));
  const Rational rhs = diff * diff * diff / Rational(static_cast<long>(card(u) * card(v)));
  auto r = make("ruzsa_sum_diff", BoundKind::unconditional, Relation::at_most, card(sumset(u, v)), rhs, Rational(0),
                DigestBuilder{}.text("ruzsa_sum_diff").set(u).set(v).hex());
  return finish(std::move(r));
}

BoundReport check_ruzsa_dim(const PointSet& a, const PointSet& b) {
  require_nonempty(a, "check_ruzsa_dim");
  require_nonempty(b, "check_ruzsa_dim");
  require_same_dim(a, b, "check_ruzsa_dim");
  if (a.size() < b.size()) throw HypothesisError("check_ruzsa_dim: need |A| >= |B|");
  const PointSet sum = sumset(a, b);
  if (affine_dim(sum) != a.dim()) throw HypothesisError("check_ruzsa_dim: A + B must be full-dimensional");
  const long d = static_cast<long>(a.dim());
  const Rational rhs = Rational(static_cast<long>(card(a))) + Rational(d * static_cast<long>(card(b))) -
                       Rational(d * (d + 1)) / Rational(2);
  auto r = make("ruzsa_dim", BoundKind::unconditional, Relation::at_least, card(sum), rhs, Rational(0),
                DigestBuilder{}.text("ruzsa_dim").set(a).set(b).hex());
  return finish(std::move(r));
}

BoundReport check_trivial_lower(const PointSet& a, const PointSet& b) {
  require_nonempty(a, "check_trivial_lower");
  require_nonempty(b, "check_trivial_lower");
  require_same_dim(a, b, "check_trivial_lower");
  auto r = make("trivial_lower", BoundKind::unconditional, Relation::at_least, card(sumset(a, b)),
                Rational(static_cast<long>(card(a) + card(b) - 1)), Rational(0),
                DigestBuilder{}.text("trivial_lower").set(a).set(b).hex());
  return finish(std::move(r));
}

BoundReport check_gs(const PointSet& a, const PointSet& b, const Point& direction) {
  require_nonempty(a, "check_gs");
  require_nonempty(b, "check_gs");
  if (a.dim() != 2 || b.dim() != 2 || direction.size() != 2) throw HypothesisError("check_gs: plane only");
  const Direction dir = Direction::from(direction);
  const auto r1 = static_cast<long>(fibers_along(a, dir).fibers.size());
  const auto r2 = static_cast<long>(fibers_along(b, dir).fibers.size());
  const Rational rhs = (ratio(card(a), r1) + ratio(card(b), r2) - Rational(1)) * Rational(r1 + r2 - 1);
  auto r = make("gs", BoundKind::unconditional, Relation::at_least, card(sumset(a, b)), rhs, Rational(0),
                DigestBuilder{}.text("gs").text("dir:" + dir.vector()(0).str() + "," + dir.vector()(1).str()).set(a).set(b).hex());
  r.details = {{"r1", std::to_string(r1)}, {"r2", std::to_string(r2)}};
  return finish(std::move(r));
}

BoundReport check_onedim_dilate(const PointSet& a, long q, long s, const std::optional<Rational>& c_param) {
  require_nonempty(a, "check_onedim_dilate");
  if (affine_dim(a) != 1) throw HypothesisError("check_onedim_dilate: A must be one-dimensional");
  if (q == s) throw HypothesisError("check_onedim_dilate: q and s must be distinct");
  if (std::gcd(std::labs(q), std::labs(s)) != 1) throw HypothesisError("check_onedim_dilate: q and s must be coprime");
  auto r = make("onedim_dilate", BoundKind::asymptotic, Relation::at_least, card(dilate_sum(q, s, a)),
                Rational((std::labs(q) + std::labs(s)) * static_cast<long>(card(a))), c_param,
                DigestBuilder{}.text("onedim_dilate").text(qs_text(q, s)).set(a).hex());
  return finish(std::move(r));
}

BoundReport check_lin_product(const PointSet& a1, const PointSet& a2, const LinearMap& map) {
  require_nonempty(a1, "check_lin_product");
  require_nonempty(a2, "check_lin_product");
  require_same_dim(a1, a2, "check_lin_product");
  if (a1.dim() != 2) throw HypothesisError("check_lin_product: plane only");
  require_no_real_eigenvalue(map, "check_lin_product");
  if (!is_collinear(a1) || !is_collinear(a2)) throw HypothesisError("check_lin_product: inputs must be collinear");
  if (a1.size() >= 2 && a2.size() >= 2 && !parallel(line_direction(a1), line_direction(a2))) {
    throw HypothesisError("check_lin_product: lines are not parallel");
  }
  auto r = make("lin_product", BoundKind::unconditional, Relation::equal, card(sumset(a1, apply_map(map, a2))),
                Rational(static_cast<long>(card(a1) * card(a2))), Rational(0),
                DigestBuilder{}.text("lin_product").map(map).set(a1).set(a2).hex());
  return finish(std::move(r));
}

BoundReport check_doubling_chain(const PointSet& a, const LinearMap& map) {
  require_nonempty(a, "check_doubling_chain");
  if (map.dim() != a.dim()) throw DimensionError("check_doubling_chain: dimension mismatch");
  if (!map.invertible()) throw HypothesisError("check_doubling_chain: map must be invertible");
  const std::int64_t n = card(a);
  const Rational c = ratio(card(transform_sum(a, map)), n);
  const std::int64_t diff = card(difference_set(a, a));
  const Rational diff_bound = c * c * Rational(static_cast<long>(n));
  const Rational sum_bound = pow(c, 6) * Rational(static_cast<long>(n));
  auto r = make("doubling_chain", BoundKind::unconditional, Relation::at_most, card(sumset(a, a)), sum_bound,
                Rational(0), DigestBuilder{}.text("doubling_chain").map(map).set(a).hex());
  r = finish(std::move(r));
  const bool diff_ok = Rational(static_cast<long>(diff)) <= diff_bound;
  r.holds = *r.holds && diff_ok;
  r.details = {{"c", c.fraction_str()},
               {"diff_size", std::to_string(diff)},
               {"diff_bound", diff_bound.fraction_str()},
               {"diff_holds", diff_ok ? "true" : "false"},
               {"sum_ratio", ratio(r.lhs, n).fraction_str()},
               {"diff_ratio", ratio(diff, n).fraction_str()}};
  return r;
}

BoundReport check_lines_bound(const PointSet& a, long q, long s, const LineDecomposition& decomp, const Rational& c_qs) {
  require_nonempty(a, "check_lines_bound");
  require_dilate_pair(q, s, "check_lines_bound");
  if (affine_dim(a) != a.dim()) throw HypothesisError("check_lines_bound: A must be full-dimensional");
  const auto check = verify_decomposition(a, decomp, DecompositionKind::cover);
  if (!check) throw HypothesisError("check_lines_bound: decomposition is not a cover of A (" + check.diagnosis.front() + ")");
  const long d = static_cast<long>(a.dim());
  const long lines = static_cast<long>(decomp.fibers.size());
  const KConstant k = k_constant(q, s, d, c_qs);
  const long factor = std::labs(q) + std::labs(s) + 2 * d - 2;
  const Rational rhs = Rational(factor * static_cast<long>(card(a))) - k.value * Rational(lines);
  auto r = make("lines_bound", BoundKind::unconditional, Relation::at_least, card(dilate_sum(q, s, a)), rhs,
                Rational(0),
                DigestBuilder{}.text("lines_bound").text(qs_text(q, s)).text("c_qs:" + c_qs.str())
                    .text(format_decomposition(decomp)).set(a).hex());
  r.details = {{"K", k.value.fraction_str()}, {"r", std::to_string(lines)}, {"c_qs", c_qs.fraction_str()}};
  return finish(std::move(r));
}

BoundReport check_grid_bound(const PointSet& a, const LinearMap& map, const GridProfile& profile) {
  require_nonempty(a, "check_grid_bound");
  if (a.dim() != 2) throw HypothesisError("check_grid_bound: plane only");
  require_no_real_eigenvalue(map, "check_grid_bound");
  const auto check = verify_grid_profile(a, profile);
  if (!check) throw HypothesisError("check_grid_bound: profile does not describe A (" + check.diagnosis.front() + ")");
  if (!(Direction::from(map.inverse().apply(profile.dir1.vector())) == profile.dir2)) {
    throw HypothesisError("check_grid_bound: dir2 is not the pullback of dir1 under the map");
  }
  const long r1 = static_cast<long>(profile.r1), r2 = static_cast<long>(profile.r2);
  const Rational shape = Rational(r2) / Rational(r1) + Rational(r1) / Rational(r2) + Rational(2);
  auto r = make("grid_bound", BoundKind::asymptotic, Relation::at_least, card(transform_sum(a, map)),
                Rational(static_cast<long>(card(a))) * shape, std::nullopt,
                DigestBuilder{}.text("grid_bound").map(map).text(format_grid_profile(profile)).set(a).hex());
  r.details = {{"r1", std::to_string(r1)},
               {"r2", std::to_string(r2)},
               {"S_size", std::to_string(profile.S.size())},
               {"B_size", std::to_string(profile.B.size())}};
  return finish(std::move(r));
}

RationalInterval root_interval(const Rational& x, unsigned k, const Rational& max_width) {
  if (x.sign() < 0) throw std::domain_error("root_interval: negative radicand");
  if (k == 0) throw std::domain_error("root_interval: zeroth root");
  // x^(1/k) = (num den^(k-1))^(1/k) / den; scale by 10^e before the integer root.
  const mpz_class base = x.num() * [&] {
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), x.den().get_mpz_t(), k - 1);
    return p;
  }();
  for (unsigned e = 16;; e *= 2) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, e);
    mpz_class radicand;
    mpz_pow_ui(radicand.get_mpz_t(), scale.get_mpz_t(), k);
    radicand *= base;
    mpz_class root;
    const int exact = mpz_root(root.get_mpz_t(), radicand.get_mpz_t(), k);
    const mpz_class denom = scale * x.den();
    RationalInterval out{Rational(root, denom), Rational(exact ? mpz_class(root) : mpz_class(root + 1), denom)};
    if (out.width() < max_width || out.exact()) return out;
  }
}

RationalInterval determinant_main_factor(const std::vector<LinearMap>& maps, Eigen::Index d) {
  if (maps.empty()) throw std::invalid_argument("determinant_main_factor: no maps");
  const Rational target = Rational(1) / Rational(mpz_class("1000000000000000000000000000000"));
  // Widths grow by at most (k * hi)^d through the sum and the power; tighten
  // each root until the result is narrow enough.
  Rational root_width = target;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Rational lo(0), hi(0);
    for (const auto& m : maps) {
      const auto iv = root_interval(m.determinant().abs(), static_cast<unsigned>(d), root_width);
      lo += iv.lo;
      hi += iv.hi;
    }
    RationalInterval out{pow(lo, static_cast<unsigned>(d)), pow(hi, static_cast<unsigned>(d))};
    if (out.width() < target || out.exact()) return out;
    root_width = root_width / Rational(1000);
  }
  throw std::runtime_error("determinant_main_factor: enclosure did not converge");
}

BoundReport probe_bukh_conjecture(const PointSet& a, const std::vector<LinearMap>& maps) {
  require_nonempty(a, "probe_bukh_conjecture");
  if (maps.empty()) throw HypothesisError("probe_bukh_conjecture: need at least one map");
  DigestBuilder dig;
  dig.text("bukh");
  for (const auto& m : maps) {
    if (m.dim() != a.dim()) throw DimensionError("probe_bukh_conjecture: dimension mismatch");
    if (!m.invertible()) throw HypothesisError("probe_bukh_conjecture: maps must be invertible");
    dig.map(m);
  }
  dig.set(a);
  const auto factor = determinant_main_factor(maps, a.dim());
  const Rational n(static_cast<long>(a.size()));
  const RationalInterval rhs{factor.lo * n, factor.hi * n};
  auto r = make("bukh_probe", BoundKind::conjectural, Relation::at_least, card(multi_map_sum(a, maps)), rhs.lo,
                std::nullopt, dig.hex());
  r = finish(std::move(r));
  const Rational lhs(static_cast<long>(r.lhs));
  const Verdict v = lhs >= rhs.hi ? Verdict::holds : lhs < rhs.lo ? Verdict::fails : Verdict::straddles;
  r.details = {{"rhs_lo", rhs.lo.fraction_str()},
               {"rhs_hi", rhs.hi.fraction_str()},
               {"rhs_exact", rhs.exact() ? "true" : "false"},
               {"verdict", to_string(v)},
               {"note", "conjectural - informational only"}};
  return r;
}

}  // namespace addcomb
