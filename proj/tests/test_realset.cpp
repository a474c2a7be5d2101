#include <cmath>
#include <random>

#include "doctest.h"

#include "cheblab/realset.hpp"

using namespace cheblab;

namespace {

void check_bands(const IntervalUnion& e, const std::vector<Band>& want, double tol) {
  REQUIRE(e.size() == want.size());
  for (size_t i = 0; i < want.size(); ++i) {
    CHECK(std::abs(e.bands()[i].lo - want[i].lo) <= tol);
    CHECK(std::abs(e.bands()[i].hi - want[i].hi) <= tol);
  }
}

}  // namespace

TEST_CASE("construction sorts and merges") {
  const IntervalUnion e({{2, 3}, {0, 1}, {1 + 1e-13, 1.5}});
  check_bands(e, {{0, 1.5}, {2, 3}}, 0.0);
  CHECK_THROWS_AS(IntervalUnion({}), std::invalid_argument);
  CHECK_THROWS_AS(IntervalUnion({{1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(IntervalUnion({{1, 1}}), std::invalid_argument);
}

TEST_CASE("text round trip") {
  const IntervalUnion e = parse_interval_union("[-1, -0.5] u [0.5,1]");
  check_bands(e, {{-1, -0.5}, {0.5, 1}}, 0.0);
  CHECK(parse_interval_union(to_text(e)) == e);
  CHECK(parse_interval_union("[0,1]U[2,3]").size() == 2);
  CHECK_THROWS_AS(parse_interval_union("[0,1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_interval_union("(0,1)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_interval_union("[a,1]"), std::invalid_argument);
}

TEST_CASE("preimage_interval examples") {
  check_bands(preimage_interval(Polynomial{-2, 0, 2}, -2, 2), {{-std::sqrt(2.0), std::sqrt(2.0)}}, 1e-10);
  const double r = std::sqrt(0.5);
  check_bands(preimage_interval(Polynomial{-6, 0, 8}, -2, 2), {{-1, -r}, {r, 1}}, 1e-10);
  check_bands(preimage_interval(Polynomial{0, 1}, -2, 2), {{-2, 2}}, 1e-12);
}

TEST_CASE("preimage errors") {
  try {
    preimage_interval(Polynomial{5, 0, 1}, -2, 2);
    FAIL("expected an error");
  } catch (const PreimageError& e) {
    CHECK(e.reason() == PreimageError::Reason::empty);
  }
  try {
    preimage_interval(Polynomial{1}, -2, 2);
    FAIL("expected an error");
  } catch (const PreimageError& e) {
    CHECK(e.reason() == PreimageError::Reason::unbounded);
  }
  CHECK_THROWS_AS(preimage_interval(Polynomial{0, 1}, 1, 1), std::invalid_argument);
}

TEST_CASE("tangency is reported as an isolated point") {
  // x^4 - 2x^2 touches 0 from below at x = 0.
  const auto res = preimage_interval_detailed(Polynomial{0, 0, -2, 0, 1}, 0, 5);
  REQUIRE(res.isolated_points.size() == 1);
  CHECK(std::abs(res.isolated_points[0]) < 1e-8);
  const double a = std::sqrt(1 + std::sqrt(6.0)), b = std::sqrt(2.0);
  check_bands(res.set, {{-a, -b}, {b, a}}, 1e-10);
}

TEST_CASE("preimage membership agrees with the predicate") {
  const Polynomial p{0.3, -4, 0.5, 1};  // x^3 + 0.5 x^2 - 4 x + 0.3
  const double lo = -2, hi = 2;
  const IntervalUnion e = preimage_interval(p, lo, hi);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    bool near_end = false;
    for (const Band& b : e.bands()) near_end = near_end || std::abs(x - b.lo) < 1e-7 || std::abs(x - b.hi) < 1e-7;
    if (near_end) continue;
    const double v = p.eval_real(x);
    CHECK(contains(e, x, 1e-8) == (lo <= v && v <= hi));
    ++checked;
  }
  CHECK(checked > 990);
}

TEST_CASE("preimage respects inclusion") {
  const Polynomial p{3, 0, -5, 0, 1};
  const IntervalUnion big = preimage_interval(p, -2, 2);
  const IntervalUnion small = preimage_interval(p, -1, 1.5);
  for (const Band& b : small.bands()) {
    bool inside = false;
    for (const Band& c : big.bands()) inside = inside || (c.lo <= b.lo + 1e-12 && b.hi <= c.hi + 1e-12);
    CHECK(inside);
  }
}

TEST_CASE("gaps") {
  CHECK(gaps(IntervalUnion::interval(-1, 1)).empty());
  const auto g = gaps(IntervalUnion({{-1, -0.5}, {0.5, 1}}));
  REQUIRE(g.size() == 1);
  CHECK(g[0].left == -0.5);
  CHECK(g[0].right == 0.5);
  const IntervalUnion three({{0, 1}, {2, 3}, {4, 5}});
  const auto g3 = gaps(three);
  REQUIRE(g3.size() == 2);
  CHECK(g3[0].left == 1);
  CHECK(g3[0].right == 2);
  CHECK(g3[1].left == 3);
  CHECK(g3[1].right == 4);
  CHECK(g3.size() == three.size() - 1);
}

TEST_CASE("set_distance") {
  const IntervalUnion unit = IntervalUnion::interval(0, 1);
  CHECK(set_distance(unit, unit) == 0.0);
  CHECK(set_distance(unit, IntervalUnion::interval(0, 2)) == doctest::Approx(1.0));
  CHECK(set_distance(IntervalUnion({{-1, -0.5}, {0.5, 1}}), IntervalUnion::interval(-1, 1)) == doctest::Approx(0.5));
  CHECK(set_distance(IntervalUnion::interval(-1, 1), IntervalUnion({{-1, -0.5}, {0.5, 1}})) == doctest::Approx(0.5));
}

TEST_CASE("contains") {
  const IntervalUnion e = IntervalUnion::interval(0, 1);
  CHECK(contains(e, 0.5, 0.0));
  CHECK_FALSE(contains(e, 1.0000001, 1e-9));
  CHECK(contains(e, 1.0000001, 1e-6));
  CHECK(distance_to(e, 3.0) == doctest::Approx(2.0));
}

TEST_CASE("affine image") {
  const IntervalUnion e({{0, 1}, {2, 3}});
  check_bands(e.affine(-2.0, 1.0), {{-5, -3}, {-1, 1}}, 1e-15);
}
