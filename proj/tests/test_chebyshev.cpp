#include <cmath>
#include <limits>

#include "doctest.h"

#include "cheblab/chebyshev.hpp"

using namespace cheblab;

namespace {

void check_coeffs(const Polynomial& p, const std::vector<double>& want, double tol) {
  REQUIRE(p.degree() == static_cast<int>(want.size()) - 1);
  for (size_t i = 0; i < want.size(); ++i) CHECK(std::abs(p.coeff(static_cast<int>(i)) - want[i]) <= tol);
}

const IntervalUnion kTwoBand({{-1, -std::sqrt(0.5)}, {std::sqrt(0.5), 1}});

// Rounding bound for evaluating p at x from its monomial coefficients.
double rounding(const Polynomial& p, double x) {
  double s = 0.0;
  for (int j = p.degree(); j >= 0; --j) s = s * std::abs(x) + std::abs(p.coeff(j));
  return 8 * std::numeric_limits<double>::epsilon() * s;
}

}  // namespace

TEST_CASE("classical interval") {
  const ChebyshevSolution s = solve(IntervalUnion::interval(-1, 1), 3);
  check_coeffs(s.T, {0, -0.75, 0, 1}, 1e-12);
  CHECK(s.t == doctest::Approx(0.25).epsilon(1e-12));
  for (int n = 1; n <= 12; ++n) {
    const double exact = std::ldexp(1.0, 1 - n);
    CHECK(std::abs(solve(IntervalUnion::interval(-1, 1), n).t - exact) / exact <= 1e-8);
  }
}

TEST_CASE("two-band quadratic preimage") {
  const ChebyshevSolution s = solve(kTwoBand, 2);
  check_coeffs(s.T, {-0.75, 0, 1}, 1e-10);
  CHECK(s.t == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("degree one on an interval") {
  const double a = 1.5, b = 4.0;
  const ChebyshevSolution s = solve(IntervalUnion::interval(a, b), 1);
  check_coeffs(s.T, {-(a + b) / 2, 1}, 1e-12);
  CHECK(s.t == doctest::Approx((b - a) / 2).epsilon(1e-12));
}

TEST_CASE("solution invariants") {
  for (const IntervalUnion& e : {IntervalUnion({{0, 1}, {2, 2.5}}), IntervalUnion({{-2, -1}, {0, 0.2}, {1, 2}}),
                                 IntervalUnion({{-1, -0.3}, {0.5, 1}})}) {
    for (int n = 1; n <= 9; ++n) {
      const ChebyshevSolution s = solve(e, n);
      CHECK(s.T.degree() == n);
      CHECK(s.T.leading() == cplx(1.0));
      CHECK(s.T.is_real());
      CHECK(s.lower_bound <= s.t);
      CHECK(s.certificate_gap() <= 1e-10);
      CHECK(s.extrema.size() >= static_cast<size_t>(n + 1));
      for (const Extremum& x : s.extrema) {
        CHECK(contains(e, x.x, 1e-12));
        const double v = std::abs(s.T.eval_real(x.x));
        CHECK(v >= s.t * (1 - 1e-9) - rounding(s.T, x.x));
        CHECK(v <= s.t * (1 + 1e-12) + rounding(s.T, x.x));
      }
      // Sup over a dense sample never exceeds t.
      for (const Band& b : e.bands()) {
        for (int i = 0; i <= 400; ++i) {
          const double x = b.lo + b.length() * i / 400;
          CHECK(std::abs(s.T.eval_real(x)) <= s.t * (1 + 1e-10) + rounding(s.T, x));
        }
      }
    }
  }
}

TEST_CASE("submultiplicativity") {
  const IntervalUnion e({{0, 1}, {2, 2.5}});
  std::vector<double> t(9);
  for (int n = 1; n <= 8; ++n) t[n] = solve(e, n).t;
  for (int n = 1; n <= 8; ++n)
    for (int m = 1; n + m <= 8; ++m) CHECK(t[n + m] <= t[n] * t[m] * (1 + 1e-9));
}

TEST_CASE("affine covariance") {
  const IntervalUnion e({{-1, -0.3}, {0.5, 1}});
  const double s = -1.7, c = 0.4;
  for (int n = 1; n <= 6; ++n) {
    const ChebyshevSolution a = solve(e, n), b = solve(e.affine(s, c), n);
    CHECK(std::abs(b.t - std::pow(std::abs(s), n) * a.t) <= 1e-9 * b.t);
    // T_b(s x + c) = s^n T_a(x)
    for (double x : {-0.8, 0.0, 0.7})
      CHECK(std::abs(b.T.eval_real(s * x + c) - std::pow(s, n) * a.T.eval_real(x)) <= 1e-9 * std::max(1.0, b.t));
  }
}

TEST_CASE("symmetric sets give parity") {
  const IntervalUnion e({{-1, -0.4}, {0.4, 1}});
  for (int n = 1; n <= 9; ++n) {
    const ChebyshevSolution s = solve(e, n);
    for (int i = (n + 1) % 2; i < n; i += 2) CHECK(std::abs(s.T.coeff(i)) <= 1e-10 * s.t);
  }
}

TEST_CASE("en_set") {
  for (int n = 1; n <= 6; ++n) {
    const IntervalUnion en = en_set(solve(IntervalUnion::interval(-1, 1), n));
    CHECK(set_distance(en, IntervalUnion::interval(-1, 1)) <= 1e-8);
  }
  const IntervalUnion sym({{-1, -0.5}, {0.5, 1}});
  CHECK(set_distance(en_set(solve(sym, 2)), sym) <= 1e-8);

  const IntervalUnion e({{0, 1}, {2, 2.5}});
  const ChebyshevSolution s = solve(e, 1);
  const IntervalUnion e1 = en_set(s);
  REQUIRE(e1.size() == 1);
  CHECK(e1.lower() == doctest::Approx(1.25 - s.t));
  CHECK(e1.upper() == doctest::Approx(1.25 + s.t));
  for (int n = 1; n <= 8; ++n) {
    const IntervalUnion en = en_set(solve(e, n));
    for (const Band& b : e.bands()) {
      CHECK(contains(en, b.lo, 1e-8));
      CHECK(contains(en, b.hi, 1e-8));
    }
  }
}

TEST_CASE("delta") {
  check_coeffs(delta(solve(IntervalUnion::interval(-1, 1), 1)), {0, 2}, 1e-12);
  check_coeffs(delta(solve(IntervalUnion::interval(-2, 2), 1)), {0, 1}, 1e-12);
  check_coeffs(delta(solve(IntervalUnion::interval(-1, 1), 3)), {0, -6, 0, 8}, 1e-10);

  const ChebyshevSolution s = solve(IntervalUnion({{0, 1}, {2, 2.5}}), 5);
  const Polynomial d = delta(s);
  const IntervalUnion en = en_set(s);
  double sup = 0.0;
  for (const Band& b : en.bands())
    for (int i = 0; i <= 2000; ++i) sup = std::max(sup, std::abs(d.eval_real(b.lo + b.length() * i / 2000)));
  CHECK(std::abs(sup - 2.0) <= 1e-8);
}

TEST_CASE("bad degree") { CHECK_THROWS_AS(solve(IntervalUnion::interval(0, 1), 0), std::invalid_argument); }
