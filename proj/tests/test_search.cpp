#include <doctest.h>

#include "addcomb/generators.hpp"
#include "addcomb/search.hpp"
#include "oracle.hpp"

using namespace addcomb;

namespace {

PointSet line(std::initializer_list<long> xs) {
  std::vector<Point> pts;
  for (long x : xs) pts.push_back(make_point({x}));
  return PointSet(1, std::move(pts));
}

const LinearMap rot90 = LinearMap::parse("0,-1;1,0");

SearchSpec dilate_spec(Eigen::Index d, long side, long n, long q, long s, bool full = false) {
  SearchSpec spec;
  spec.dim = d;
  spec.box_side = side;
  spec.n = n;
  spec.objective = DilateSumObjective{q, s};
  spec.full_dimensional = full;
  return spec;
}

SearchSpec rot_spec(long side, long n) {
  SearchSpec spec;
  spec.dim = 2;
  spec.box_side = side;
  spec.n = n;
  spec.objective = TransformSumObjective{rot90};
  return spec;
}

}  // namespace

TEST_CASE("canonicalize") {
  const Objective dil = DilateSumObjective{1, 2};
  CHECK(canonicalize(line({5, 6, 8}), dil) == line({0, 1, 3}));
  CHECK(canonicalize(line({0, 1, 3}), dil) == line({0, 1, 3}));
  const PointSet shifted = translate(gen_BN(3), make_point({7, 7}));
  CHECK(canonicalize(shifted, dil) == gen_BN(3));
  const Objective tr = TransformSumObjective{rot90};
  CHECK(canonicalize(shifted, tr) == gen_BN(3));
  // Translations only for a general map: no reflection.
  CHECK(canonicalize(PointSet(2, {{0, 0}, {0, 1}, {1, 1}}), tr) == PointSet(2, {{0, 0}, {0, 1}, {1, 1}}));
  CHECK(SymmetryGroup::of(dil, 3).order() == 48);
  CHECK(SymmetryGroup::of(tr, 2).order() == 1);
}

TEST_CASE("symmetry group elements are distinct signed permutations") {
  const SymmetryGroup g{3, true};
  const PointSet probe(3, {{1, 2, 3}});
  std::set<PointSet> images;
  for (std::size_t i = 0; i < g.order(); ++i) images.insert(g.apply(i, probe));
  CHECK(images.size() == 48);
}

TEST_CASE("minimize: worked examples") {
  const auto a = minimize(dilate_spec(1, 10, 4, 1, 2));
  CHECK(a.min_value == 10);
  CHECK(a.witnesses.front() == line({0, 1, 2, 3}));
  for (const auto& w : a.witnesses) CHECK(evaluate_objective(DilateSumObjective{1, 2}, w) == 10);

  const auto b = minimize(dilate_spec(1, 4, 2, 2, 3));
  CHECK(b.min_value == 4);
  // {0,1}, {0,2}, {0,3} are pairwise inequivalent.
  CHECK(b.canonical_classes == 3);

  const auto c = minimize(rot_spec(3, 4));
  CHECK(c.min_value == 9);
  CHECK(std::find(c.witnesses.begin(), c.witnesses.end(), gen_BN(2)) != c.witnesses.end());
}

TEST_CASE("minimize: rot90 minima over the 3 x 3 box") {
  const std::vector<std::int64_t> golden{1, 4, 7, 9, 13, 16};
  for (long n = 1; n <= 6; ++n) {
    const auto r = minimize(rot_spec(3, n));
    CHECK(r.min_value == golden[static_cast<std::size_t>(n - 1)]);
    CHECK(r.min_value >= 2 * n - 1);
    const auto naive = oracle::naive_minimum(2, 3, n, [](const oracle::ISet& a) {
      return oracle::transform_sum(a, {{0, -1}, {1, 0}});
    });
    CHECK(static_cast<std::size_t>(r.min_value) == naive);
  }
}

TEST_CASE("minimize agrees with the naive enumerator") {
  struct Case {
    Eigen::Index d;
    long side, n, q, s;
    bool full;
  };
  const std::vector<Case> cases{{1, 12, 5, 1, 2, false}, {1, 10, 4, 2, 3, false}, {1, 9, 4, -2, -3, false},
                                {2, 3, 4, 1, 2, false},  {2, 4, 4, 1, 2, true},   {2, 3, 5, 2, 3, true},
                                {3, 2, 4, 1, 2, true},   {2, 4, 3, 3, 1, false}};
  for (const auto& c : cases) {
    CAPTURE(c.d);
    CAPTURE(c.n);
    const auto r = minimize(dilate_spec(c.d, c.side, c.n, c.q, c.s, c.full));
    const auto naive = oracle::naive_minimum(c.d, c.side, c.n, [&](const oracle::ISet& a) {
      if (c.full && oracle::affine_dim(a) != c.d) return SIZE_MAX;
      return oracle::dilate_sum(c.q, c.s, a);
    });
    CHECK(static_cast<std::size_t>(r.min_value) == naive);
  }
}

TEST_CASE("minimize with a rational map and several maps") {
  SearchSpec spec = rot_spec(3, 4);
  spec.objective = TransformSumObjective{LinearMap::parse("3/5,-4/5;4/5,3/5")};
  const auto r = minimize(spec);
  const auto naive = oracle::naive_minimum(2, 3, 4, [](const oracle::ISet& a) {
    return oracle::sum(oracle::scale(5, a), oracle::apply({{3, -4}, {4, 3}}, a)).size();
  });
  CHECK(static_cast<std::size_t>(r.min_value) == naive);

  spec.objective = MultiMapObjective{{LinearMap::identity(2), rot90, LinearMap::parse("2,1;1,1")}};
  spec.n = 3;
  const auto m = minimize(spec);
  const auto naive3 = oracle::naive_minimum(2, 3, 3, [](const oracle::ISet& a) {
    return oracle::sum(oracle::sum(a, oracle::apply({{0, -1}, {1, 0}}, a)), oracle::apply({{2, 1}, {1, 1}}, a)).size();
  });
  CHECK(static_cast<std::size_t>(m.min_value) == naive3);
}

TEST_CASE("minimize: one-dimensional sharp constant") {
  for (long n = 2; n <= 6; ++n) {
    const auto r = minimize(dilate_spec(1, 3 * n + 1, n, 1, 2));
    CHECK(r.min_value == 3 * n - 2);
    CHECK(r.witnesses.front() == gen_ap(make_point({0}), make_point({1}), n));
  }
}

TEST_CASE("minimize is independent of thread count and split depth") {
  const SearchSpec spec = dilate_spec(2, 4, 5, 1, 2, true);
  SearchOptions one;
  const auto base = minimize(spec, one);
  const std::string table = format_search_result(spec, base);
  for (unsigned t : {2u, 8u}) {
    for (int depth : {0, 1, 3}) {
      SearchOptions o;
      o.threads = t;
      o.split_depth = depth;
      CHECK(format_search_result(spec, minimize(spec, o)) == table);
    }
  }
}

TEST_CASE("witness cap") {
  SearchOptions o;
  o.witness_cap = 2;
  const auto r = minimize(dilate_spec(1, 8, 2, 2, 3), o);
  CHECK(r.witnesses.size() == 2);
  CHECK(r.canonical_classes == 7);
  CHECK(r.witness_cap == 2);
}

TEST_CASE("minimize refusals") {
  SearchOptions o;
  o.node_budget = 100;
  try {
    minimize(dilate_spec(1, 20, 5, 1, 2), o);
    FAIL("expected refusal");
  } catch (const BudgetExceeded& e) {
    CHECK(e.space_size() == mpz_class(15504));
  }
  CHECK_THROWS_AS(minimize(dilate_spec(2, 4, 2, 1, 2, true)), InfeasibleSpec);
  CHECK_THROWS_AS(minimize(dilate_spec(1, 3, 4, 1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(minimize(dilate_spec(1, 5, 2, 2, 4)), std::invalid_argument);
  SearchSpec singular = rot_spec(3, 2);
  singular.objective = TransformSumObjective{LinearMap::parse("1,1;1,1")};
  CHECK_THROWS_AS(minimize(singular), std::invalid_argument);
}

TEST_CASE("slack profile") {
  const auto rows = slack_profile(dilate_spec(1, 22, 2, 1, 2), 2, 7);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    CHECK(r.slack == Rational(-2));
    CHECK(r.min_value == 3 * r.n - 2);
  }
  const auto rot = slack_profile(rot_spec(3, 1), 1, 1);
  CHECK(rot[0].min_value == 1);
  CHECK(rot[0].main_term == Rational(4));
  CHECK(rot[0].slack == Rational(-3));
  const auto full = slack_profile(dilate_spec(2, 4, 3, 1, 2, true), 3, 5);
  CHECK(full.size() == 3);
  for (const auto& r : full) CHECK(r.main_term == Rational(5 * r.n));
}
