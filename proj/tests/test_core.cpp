#include <doctest.h>

#include "addcomb/generators.hpp"
#include "addcomb/io.hpp"
#include "addcomb/point_set.hpp"
#include "oracle.hpp"

using namespace addcomb;

namespace {

PointSet line(std::initializer_list<long> xs) {
  std::vector<Point> pts;
  for (long x : xs) pts.push_back(make_point({x}));
  return PointSet(1, std::move(pts));
}

}  // namespace

TEST_CASE("rational arithmetic and parsing") {
  const Rational a = Rational::parse("6/4");
  CHECK(a.str() == "3/2");
  CHECK(a.fraction_str() == "3/2");
  CHECK(Rational(4).fraction_str() == "4/1");
  CHECK(Rational::parse("-7").str() == "-7");
  CHECK(a + Rational(1, 2) == Rational(2));
  CHECK(a * Rational(2, 3) == Rational(1));
  CHECK(floor(Rational(-3, 2)) == -2);
  CHECK(ceil(Rational(-3, 2)) == -1);
  CHECK(pow(Rational(5, 2), 3) == Rational(125, 8));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS(Rational::parse("1/x"));
  Rational z(1);
  CHECK_THROWS_AS(z /= Rational(0), std::domain_error);
}

TEST_CASE("point sets are sorted and deduplicated") {
  const PointSet s(2, {{1, 0}, {0, 1}, {1, 0}});
  CHECK(s.size() == 2);
  CHECK(points_equal(s[0], make_point({0, 1})));
  CHECK(s.contains(make_point({1, 0})));
  CHECK_FALSE(s.contains(make_point({1, 1})));
  CHECK_THROWS_AS(PointSet(2, std::vector<Point>{make_point({1})}), DimensionError);
}

TEST_CASE("sumset") {
  CHECK(sumset(line({0}), line({0})).size() == 1);
  const PointSet s = sumset(line({0, 1, 3}), line({0, 2, 6}));
  CHECK(s == line({0, 1, 2, 3, 5, 6, 7, 9}));
  CHECK(sumset(gen_BN(2), gen_BN(2)) == gen_BN(3));
  CHECK_THROWS_AS(sumset(line({0}), gen_BN(2)), DimensionError);
  CHECK_THROWS(sumset(PointSet(1), line({0})));
}

TEST_CASE("dilate") {
  const PointSet a = line({0, 1, 3});
  CHECK(dilate(1, a).set == a);
  CHECK(dilate(2, a).set == line({0, 2, 6}));
  CHECK(dilate(-3, PointSet(2, {{1, 0}, {0, 1}})).set == PointSet(2, {{-3, 0}, {0, -3}}));
  const auto zero = dilate(0, a);
  CHECK(zero.degenerate);
  CHECK(zero.set.size() == 1);
}

TEST_CASE("dilate_sum") {
  CHECK(dilate_sum(1, 2, line({0, 1, 3})).size() == 8);
  CHECK(dilate_sum(2, 3, line({0, 1, 2})) == line({0, 2, 3, 4, 5, 6, 7, 8, 10}));
  CHECK(dilate_sum(1, 1, line({0, 1})) == line({0, 1, 2}));
}

TEST_CASE("apply_map and transform_sum") {
  const LinearMap rot = LinearMap::parse("0,-1;1,0");
  const PointSet b2 = gen_BN(2);
  CHECK(apply_map(LinearMap::identity(2), b2) == b2);
  CHECK(apply_map(rot, b2) == translate(b2, make_point({-1, 0})));
  CHECK(apply_map(LinearMap::scalar(2, Rational(3, 2)), PointSet(2, {{2, 0}})) == PointSet(2, {{3, 0}}));
  CHECK(transform_sum(b2, rot).size() == 9);
  CHECK(transform_sum(gen_BN(3), rot).size() == 25);
  const PointSet p(2, {{3, 5}});
  const PointSet single = transform_sum(p, rot);
  CHECK(single == PointSet(2, {{-2, 8}}));
  CHECK_THROWS(transform_sum(b2, LinearMap::parse("1,1;1,1")));
}

TEST_CASE("difference_set") {
  CHECK(difference_set(line({0, 1}), line({0, 1})) == line({-1, 0, 1}));
  CHECK(difference_set(line({0, 1, 3}), line({0, 1, 3})).size() == 7);
  CHECK(difference_set(line({4}), line({4})) == line({0}));
}

TEST_CASE("affine_dim") {
  CHECK(affine_dim(line({9})) == 0);
  CHECK(affine_dim(PointSet(2, {{1, 0}, {3, 0}, {7, 0}})) == 1);
  CHECK(affine_dim(gen_AN(2, 3)) == 2);
  CHECK(affine_dim(PointSet(3, {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {1, 0, 0}})) == 2);
}

TEST_CASE("no-real-eigenvalue predicate") {
  CHECK(has_no_real_eigenvalue(LinearMap::parse("0,-1;1,0")));
  CHECK_FALSE(has_no_real_eigenvalue(LinearMap::identity(2)));
  CHECK(has_no_real_eigenvalue(LinearMap::parse("3/5,-4/5;4/5,3/5")));
  // Repeated real eigenvalue: discriminant exactly zero.
  CHECK_FALSE(has_no_real_eigenvalue(LinearMap::parse("1,1;0,1")));
  CHECK_THROWS(has_no_real_eigenvalue(LinearMap::identity(3)));
}

TEST_CASE("linear map parse and str round trip") {
  const LinearMap m = LinearMap::parse("3/5,-4/5;4/5,3/5");
  CHECK(m.str() == "3/5,-4/5;4/5,3/5");
  CHECK(LinearMap::parse(m.str()) == m);
  CHECK(m.determinant() == Rational(1));
  CHECK(m.trace() == Rational(6, 5));
  CHECK(m.inverse() == LinearMap::parse("3/5,4/5;-4/5,3/5"));
  CHECK_THROWS(LinearMap::parse("1,2;3"));
  CHECK_THROWS_AS(LinearMap::parse("1,1;1,1").inverse(), DimensionError);
}

TEST_CASE("geometry helpers") {
  CHECK(points_equal(primitive_integer_vector(make_point({Rational(2, 3), Rational(4, 3)})), make_point({1, 2})));
  CHECK(parallel(make_point({1, 2}), make_point({-2, -4})));
  CHECK_FALSE(parallel(make_point({1, 2}), make_point({2, 1})));
  CHECK(is_collinear(PointSet(2, {{0, 0}, {2, 3}, {4, 6}})));
  CHECK_FALSE(is_collinear(gen_BN(2)));
  CHECK(points_equal(line_direction(PointSet(2, {{4, 6}, {0, 0}})), make_point({2, 3})));
}

TEST_CASE("set operations agree with the integer oracle") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const PointSet a = gen_random_box(2, 6, 1 + seed % 9, seed);
    const PointSet b = gen_random_box(2, 6, 1 + (seed * 7) % 11, seed + 1000);
    const auto ia = oracle::from(a), ib = oracle::from(b);
    CHECK(oracle::from(sumset(a, b)) == oracle::sum(ia, ib));
    CHECK(oracle::from(difference_set(a, b)) == oracle::diff(ia, ib));
    CHECK(dilate_sum(2, -3, a).size() == oracle::dilate_sum(2, -3, ia));
    CHECK(transform_sum(a, LinearMap::parse("0,-1;1,0")).size() == oracle::transform_sum(ia, {{0, -1}, {1, 0}}));
    CHECK(affine_dim(a) == oracle::affine_dim(ia));
  }
}

TEST_CASE("point-set text format") {
  const PointSet a = gen_AN(2, 3);
  const std::string text = format_point_set(a, {"family AN"});
  CHECK(text.rfind("dim 2\n", 0) == 0);
  CHECK(parse_point_set(text) == a);
  CHECK(parse_point_set("# header\ndim 1\n\n3\n# half\n1/2\n") == PointSet(1, {make_point({Rational(1, 2)}), make_point({3})}));
  CHECK(parse_point_set("dim 2\n1, 2\n") == PointSet(2, {{1, 2}}));

  auto line_of = [](const std::string& t) {
    try {
      parse_point_set(t);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("dim 2\n1 2\n1\n") == 3);
  CHECK(line_of("dim 1\n1\n1\n") == 3);
  CHECK(line_of("1 2\n") == 1);
  CHECK(line_of("dim 1\nx\n") == 2);
}

TEST_CASE("sumset with rational and very large coordinates") {
  const PointSet a(1, std::vector<Point>{make_point({Rational(1, 2)}), make_point({Rational(1, 3)})});
  const PointSet b(1, std::vector<Point>{make_point({Rational(1, 6)}), make_point({0})});
  CHECK(sumset(a, b) == PointSet(1, std::vector<Point>{make_point({Rational(1, 3)}), make_point({Rational(1, 2)}),
                                                       make_point({Rational(2, 3)})}));
  const Rational huge(mpz_class("123456789012345678901234567890"));
  const PointSet h(2, std::vector<Point>{make_point({huge, Rational(1)}), make_point({Rational(0), -huge})});
  const PointSet hh = sumset(h, h);
  CHECK(hh.size() == 3);
  CHECK(hh.contains(make_point({huge + huge, Rational(2)})));
  CHECK(difference_set(h, h).size() == 3);
}
