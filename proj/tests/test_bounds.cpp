#include <doctest.h>

#include "addcomb/bounds.hpp"
#include "addcomb/generators.hpp"

using namespace addcomb;

namespace {

PointSet line(std::initializer_list<long> xs) {
  std::vector<Point> pts;
  for (long x : xs) pts.push_back(make_point({x}));
  return PointSet(1, std::move(pts));
}

PointSet range(long n) { return gen_ap(make_point({0}), make_point({1}), n); }

const LinearMap rot90 = LinearMap::parse("0,-1;1,0");
const LinearMap rot34 = LinearMap::parse("3/5,-4/5;4/5,3/5");

}  // namespace

TEST_CASE("report serialization") {
  const auto r = check_ruzsa_sum_diff(line({0, 1}), line({0, 1}));
  const std::string j = to_json_line(r);
  CHECK(j.find('\n') == std::string::npos);
  CHECK(j.find("\"rhs_main\":\"27/4\"") != std::string::npos);
  CHECK(j.find("\"kind\":\"unconditional\"") != std::string::npos);
  CHECK(j.find("\"inputs_digest\":\"fnv1a64:") != std::string::npos);
  CHECK(to_json_line(check_ruzsa_sum_diff(line({0, 1}), line({0, 1}))) == j);
  CHECK(r.inputs_digest != check_ruzsa_sum_diff(line({0, 2}), line({0, 1})).inputs_digest);
}

TEST_CASE("dilate main term") {
  const auto a = check_dilate_main(gen_AN(2, 3), 1, 2);
  CHECK(a.lhs == 14);
  CHECK(a.rhs_main == Rational(20));
  CHECK(a.slack == Rational(-6));
  CHECK(a.kind == BoundKind::asymptotic);
  CHECK_FALSE(a.holds.has_value());
  for (long n = 2; n <= 9; ++n) {
    const auto r = check_dilate_main(range(n), 1, 2);
    CHECK(r.lhs == 3 * n - 2);
    CHECK(r.slack == Rational(-2));
  }
  const auto two = check_dilate_main(line({0, 1}), 2, 3);
  CHECK(two.lhs == 4);
  CHECK(two.rhs_main == Rational(10));
  CHECK(two.slack == Rational(-6));
  CHECK_THROWS_AS(check_dilate_main(range(4), 2, 4), HypothesisError);
  CHECK_THROWS_AS(check_dilate_main(range(4), 1, 1), HypothesisError);
  CHECK_THROWS_AS(check_dilate_main(PointSet(2, {{0, 0}, {1, 1}}), 1, 2), HypothesisError);
}

TEST_CASE("transform main term") {
  const auto b3 = check_transform_main(gen_BN(3), rot90);
  CHECK(b3.lhs == 25);
  CHECK(b3.rhs_main == Rational(36));
  CHECK(b3.slack == Rational(-11));
  const auto b10 = check_transform_main(gen_BN(10), rot90);
  CHECK(b10.lhs == 361);
  CHECK(b10.slack == Rational(-39));
  const auto one = check_transform_main(PointSet(2, {{4, 1}}), rot90);
  CHECK(one.lhs == 1);
  CHECK(one.slack == Rational(-3));
  CHECK_THROWS_AS(check_transform_main(gen_BN(3), LinearMap::identity(2)), HypothesisError);
}

TEST_CASE("Ruzsa triangle and sum-difference") {
  const auto t = check_ruzsa_triangle(line({0, 1}), line({0, 1}), line({0, 1}));
  CHECK(t.lhs == 6);
  CHECK(t.rhs_main == Rational(9));
  CHECK(*t.holds);
  const auto s = check_ruzsa_triangle(line({2}), line({2}), line({2}));
  CHECK(s.lhs == 1);
  CHECK(s.slack == Rational(0));
  CHECK(*s.holds);
  const auto u = check_ruzsa_triangle(line({0}), line({0, 1, 3}), line({0, 2}));
  CHECK(u.lhs == 5);
  // |U - V| = 3 and |U - W| = 2.
  CHECK(u.rhs_main == Rational(6));
  CHECK(*u.holds);

  const auto d = check_ruzsa_sum_diff(line({0, 1}), line({0, 1}));
  CHECK(d.lhs == 3);
  CHECK(d.rhs_main == Rational(27, 4));
  CHECK(*d.holds);
  CHECK(check_ruzsa_sum_diff(line({5}), line({5})).rhs_main == Rational(1));
  const auto e = check_ruzsa_sum_diff(line({0, 1, 3}), line({0, 1, 3}));
  CHECK(e.lhs == 6);
  CHECK(e.rhs_main == Rational(343, 9));
  CHECK(e.relation == Relation::at_most);
}

TEST_CASE("Ruzsa dimension bound") {
  const auto a = check_ruzsa_dim(gen_BN(2), gen_BN(2));
  CHECK(a.lhs == 9);
  CHECK(a.rhs_main == Rational(9));
  CHECK(*a.holds);
  // |B_3 + {(0,0),(1,0),(0,1)}| counted directly is 15.
  const auto b = check_ruzsa_dim(gen_BN(3), PointSet(2, {{0, 0}, {1, 0}, {0, 1}}));
  CHECK(b.lhs == 15);
  CHECK(b.rhs_main == Rational(12));
  CHECK(*b.holds);
  const auto c = check_ruzsa_dim(line({0, 1}), line({0, 1}));
  CHECK(c.lhs == 3);
  CHECK(c.slack == Rational(0));
  CHECK_THROWS_AS(check_ruzsa_dim(line({0}), line({0, 1})), HypothesisError);
  CHECK_THROWS_AS(check_ruzsa_dim(PointSet(2, {{0, 0}, {1, 0}}), PointSet(2, {{0, 0}})), HypothesisError);
}

TEST_CASE("trivial lower bound") {
  CHECK(check_trivial_lower(line({0, 1}), line({0, 1})).slack == Rational(0));
  const auto b = check_trivial_lower(gen_BN(2), gen_BN(2));
  CHECK(b.lhs == 9);
  CHECK(b.rhs_main == Rational(7));
  const auto c = check_trivial_lower(line({3}), line({0, 4, 9}));
  CHECK(c.lhs == 3);
  CHECK(c.slack == Rational(0));
}

TEST_CASE("Grynkiewicz-Serra bound") {
  const auto a = check_gs(gen_BN(2), gen_BN(2), make_point({1, 0}));
  CHECK(*a.detail("r1") == "2");
  // (4/2 + 4/2 - 1)(2 + 2 - 1)
  CHECK(a.rhs_main == Rational(9));
  CHECK(a.lhs == 9);
  CHECK(*a.holds);
  const PointSet ap = gen_ap(make_point({0, 0}), make_point({1, 2}), 5);
  const auto b = check_gs(ap, ap, make_point({1, 2}));
  CHECK(b.rhs_main == Rational(9));
  CHECK(b.lhs == 9);
  const auto c = check_gs(gen_BN(3), gen_CN(4), make_point({1, 0}));
  CHECK(*c.detail("r1") == "3");
  CHECK(*c.detail("r2") == "2");
  CHECK(c.rhs_main == Rational(20));
  CHECK(c.lhs == 20);
  CHECK(*c.holds);
}

TEST_CASE("one-dimensional dilate sums") {
  for (long n = 2; n <= 10; ++n) CHECK(check_onedim_dilate(range(n), 1, 2).slack == Rational(-2));
  const auto r = check_onedim_dilate(line({0, 1, 2}), 2, 3);
  CHECK(r.lhs == 9);
  CHECK(r.rhs_main == Rational(15));
  CHECK(r.slack == Rational(-6));
  CHECK_FALSE(r.holds.has_value());
  CHECK(*check_onedim_dilate(line({0, 1, 2}), 2, 3, Rational(6)).holds);
  CHECK_FALSE(*check_onedim_dilate(line({0, 1, 2}), 2, 3, Rational(5)).holds);
  CHECK_THROWS_AS(check_onedim_dilate(gen_BN(2), 1, 2), HypothesisError);
}

TEST_CASE("linear product identity") {
  const auto a = check_lin_product(PointSet(2, {{0, 0}, {1, 0}}), PointSet(2, {{0, 1}, {2, 1}}), rot90);
  CHECK(a.lhs == 4);
  CHECK(a.relation == Relation::equal);
  CHECK(*a.holds);
  CHECK(check_lin_product(PointSet(2, {{1, 1}}), PointSet(2, {{1, 1}}), rot90).lhs == 1);
  const auto c = check_lin_product(PointSet(2, {{0, 0}, {1, 0}, {5, 0}}), PointSet(2, {{0, 0}, {3, 0}}), rot34);
  CHECK(c.lhs == 6);
  CHECK(*c.holds);
  CHECK_THROWS_AS(check_lin_product(PointSet(2, {{0, 0}, {1, 0}}), PointSet(2, {{0, 0}, {0, 1}}), rot90),
                  HypothesisError);
}

TEST_CASE("doubling chain") {
  const auto a = check_doubling_chain(range(4), LinearMap::scalar(1, 2));
  CHECK(*a.detail("c") == "5/2");
  CHECK(*a.detail("diff_size") == "7");
  CHECK(*a.detail("diff_bound") == "25/1");
  CHECK(a.lhs == 7);
  CHECK(a.rhs_main == pow(Rational(5, 2), 6) * Rational(4));
  CHECK(*a.holds);
  const auto s = check_doubling_chain(line({8}), LinearMap::scalar(1, 2));
  CHECK(*s.detail("c") == "1/1");
  CHECK(s.slack == Rational(0));
  const auto b = check_doubling_chain(gen_BN(3), rot90);
  CHECK(*b.detail("c") == "25/9");
  CHECK(*b.detail("diff_bound") == "625/9");
  CHECK(b.lhs == 25);
}

TEST_CASE("K constant and the lines bound") {
  CHECK(k_constant(1, 2, 2, Rational(2)).value == Rational(20));
  const PointSet b3 = gen_BN(3);
  const auto r = check_lines_bound(b3, 1, 2, fibers_along(b3, Direction::from(make_point({1, 0}))), Rational(2));
  CHECK(*r.detail("K") == "20/1");
  CHECK(*r.detail("r") == "3");
  CHECK(r.rhs_main == Rational(-15));
  CHECK(*r.holds);
  const PointSet a5 = gen_AN(2, 5);
  const auto s = check_lines_bound(a5, 1, 2, fibers_along(a5, Direction::from(make_point({1, 0}))), Rational(2));
  CHECK(*s.detail("r") == "2");
  CHECK(*s.holds);
  const PointSet ap = range(6);
  const auto t = check_lines_bound(ap, 1, 2, fibers_along(ap, Direction::from(make_point({1}))), Rational(2));
  CHECK(t.rhs_main == Rational(3 * 6) - k_constant(1, 2, 1, Rational(2)).value);
  // A sqrt-cutoff decomposition with leftover is not a cover.
  CHECK_THROWS_AS(check_lines_bound(a5, 1, 2, sqrt_cutoff_decompose(a5), Rational(2)), HypothesisError);
}

TEST_CASE("grid bound") {
  const auto a = check_grid_bound(gen_BN(3), rot90, grid_profile(gen_BN(3), rot90));
  CHECK(*a.detail("r1") == "3");
  CHECK(*a.detail("r2") == "3");
  CHECK(a.rhs_main == Rational(36));
  CHECK(a.lhs == 25);
  CHECK(a.slack == Rational(-11));
  const auto b = check_grid_bound(gen_BN(6), rot90, grid_profile(gen_BN(6), rot90));
  CHECK(b.rhs_main == Rational(144));
  CHECK(b.lhs == 121);
  const PointSet one(2, {{0, 0}});
  const auto c = check_grid_bound(one, rot90, grid_profile(one, rot90));
  CHECK(c.rhs_main == Rational(4));
  CHECK(c.lhs == 1);
  auto wrong = grid_profile(gen_BN(3), rot90);
  wrong.r2 = 2;
  CHECK_THROWS_AS(check_grid_bound(gen_BN(3), rot90, wrong), HypothesisError);
}

TEST_CASE("root enclosures") {
  const Rational w = Rational(1, 1000000);
  const auto r = root_interval(Rational(4), 2, w);
  CHECK(r.exact());
  CHECK(r.lo == Rational(2));
  const auto s = root_interval(Rational(2), 2, w);
  CHECK(s.lo * s.lo < Rational(2));
  CHECK(s.hi * s.hi > Rational(2));
  CHECK(s.width() < w);
  const auto t = root_interval(Rational(8, 27), 3, w);
  CHECK(t.exact());
  CHECK(t.lo == Rational(2, 3));
}

TEST_CASE("determinant-bound probe") {
  const auto a = probe_bukh_conjecture(gen_BN(4), {LinearMap::identity(2), rot90});
  CHECK(a.rhs_main == Rational(64));
  CHECK(a.kind == BoundKind::conjectural);
  CHECK(*a.detail("verdict") == "fails");
  const auto b = probe_bukh_conjecture(gen_BN(3), {LinearMap::identity(2)});
  CHECK(b.lhs == 9);
  CHECK(b.rhs_main == Rational(9));
  CHECK(*b.detail("verdict") == "holds");
  const auto c = probe_bukh_conjecture(range(7), {LinearMap::scalar(1, 1), LinearMap::scalar(1, 2)});
  CHECK(c.rhs_main == Rational(21));
  CHECK(c.lhs == 19);
  const auto d = probe_bukh_conjecture(gen_BN(3), {LinearMap::identity(2), LinearMap::scalar(2, 2)});
  CHECK(*d.detail("rhs_exact") == "true");
  CHECK(d.rhs_main == Rational(81));
  // Irrational factor (1 + sqrt 2)^2, enclosed.
  const auto e = probe_bukh_conjecture(gen_BN(3), {LinearMap::identity(2), LinearMap::parse("2,0;0,1")});
  CHECK(*e.detail("rhs_exact") == "false");
  CHECK(Rational::parse(*e.detail("rhs_hi")) - Rational::parse(*e.detail("rhs_lo")) <
        Rational(1) / Rational(mpz_class("1000000000000000000000000000000")) * Rational(9));
}
