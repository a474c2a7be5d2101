#include <cmath>
#include <random>

#include "doctest.h"

#include "cheblab/poly.hpp"

using namespace cheblab;

namespace {

Polynomial random_real(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> c(static_cast<size_t>(degree) + 1);
  for (cplx& x : c) x = u(rng);
  if (c.back() == 0.0) c.back() = 0.5;
  return Polynomial(std::move(c));
}

bool same(const Polynomial& a, const Polynomial& b, double tol) {
  const int d = std::max(a.degree(), b.degree());
  for (int i = 0; i <= d; ++i)
    if (std::abs(a.coeff(i) - b.coeff(i)) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("eval") {
  CHECK(eval(Polynomial{1, 0, 1}, 2.0) == cplx(5.0));
  CHECK(eval(Polynomial{}, cplx(3.0, -1.0)) == cplx(0.0));
  CHECK(std::abs(eval(Polynomial{0, -0.75, 0, 1}, 1.0) - 0.25) < 1e-15);
  CHECK(Polynomial{0, -0.75, 0, 1}.eval_real(1.0) == doctest::Approx(0.25));
}

TEST_CASE("trailing zeros are trimmed") {
  const Polynomial p(std::vector<cplx>{1.0, 2.0, 0.0, 0.0});
  CHECK(p.degree() == 1);
  CHECK(p.leading() == cplx(2.0));
  CHECK(Polynomial(std::vector<cplx>{0.0, 0.0}).is_zero());
}

TEST_CASE("derivative") {
  CHECK(derivative(Polynomial{1, 0, 1}) == Polynomial{0, 2});
  CHECK(derivative(Polynomial{5}).is_zero());
  CHECK(derivative(Polynomial{0, -0.75, 0, 1}) == Polynomial{-0.75, 0, 3});
}

TEST_CASE("derivative is linear") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial p = random_real(rng, 6), q = random_real(rng, 4);
    const cplx a(0.5, 0.0), b(-2.0, 0.0);
    CHECK(same(derivative(a * p + b * q), a * derivative(p) + b * derivative(q), 1e-15));
  }
}

TEST_CASE("compose") {
  CHECK(compose(Polynomial{0, 0, 1}, Polynomial{1, 1}) == Polynomial{1, 2, 1});
  const Polynomial q{3, -1, 0, 2};
  CHECK(compose(Polynomial{0, 1}, q) == q);
  CHECK(compose(Polynomial{-2, 0, 1}, Polynomial{-2, 0, 1}) == Polynomial{2, 0, -4, 0, 1});
}

TEST_CASE("compose agrees with nested evaluation") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> deg(1, 6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial p = random_real(rng, deg(rng)), q = random_real(rng, deg(rng));
    const Polynomial pq = compose(p, q);
    CHECK(pq.degree() == p.degree() * q.degree());
    for (int i = 0; i < 100; ++i) {
      cplx z(u(rng), u(rng));
      if (std::abs(z) > 1.0) z /= std::abs(z);
      const cplx direct = p(q(z));
      CHECK(std::abs(pq(z) - direct) <= 1e-10 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("roots of simple polynomials") {
  auto r = roots(Polynomial{-1, 0, 1});
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  CHECK(std::abs(r[0] + 1.0) < 1e-14);
  CHECK(std::abs(r[1] - 1.0) < 1e-14);

  r = roots(Polynomial{1, 0, 1});
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return a.imag() < b.imag(); });
  CHECK(std::abs(r[0] - cplx(0, -1)) < 1e-14);
  CHECK(std::abs(r[1] - cplx(0, 1)) < 1e-14);
}

TEST_CASE("triple root clusters") {
  const Polynomial p{-8, 12, -6, 1};  // (z - 2)^3
  const auto r = roots(p);
  REQUIRE(r.size() == 3);
  for (cplx z : r) CHECK(std::abs(z - 2.0) < 1e-5);
  const auto cl = cluster_roots(r);
  REQUIRE(cl.size() == 1);
  CHECK(cl[0].multiplicity == 3);
  CHECK(std::abs(cl[0].value - 2.0) < 1e-5);
}

TEST_CASE("roots satisfy Vieta relations") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> deg(1, 8);
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial p = random_real(rng, deg(rng));
    const int n = p.degree();
    const auto r = roots(p);
    REQUIRE(static_cast<int>(r.size()) == n);
    cplx sum = 0.0, prod = 1.0;
    for (cplx z : r) {
      sum += z;
      prod *= z;
      CHECK(relative_residual(p, z) <= 1e-10);
    }
    const cplx want_sum = -p.coeff(n - 1) / p.leading();
    const cplx want_prod = (n % 2 ? -1.0 : 1.0) * p.coeff(0) / p.leading();
    CHECK(std::abs(sum - want_sum) <= 1e-8 * std::max(1.0, std::abs(want_sum)));
    CHECK(std::abs(prod - want_prod) <= 1e-8 * std::max(1.0, std::abs(want_prod)));
  }
}

TEST_CASE("roots rejects constants") { CHECK_THROWS_AS(roots(Polynomial{3}), std::invalid_argument); }

TEST_CASE("from_roots and real critical points") {
  const std::vector<cplx> rs{-1.0, 0.0, 1.0};
  const Polynomial p = Polynomial::from_roots(rs);
  CHECK(same(p, Polynomial{0, -1, 0, 1}, 1e-15));
  const auto crit = real_critical_points(p);
  REQUIRE(crit.size() == 2);
  CHECK(crit[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(crit[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("eval_with_derivative") {
  const Polynomial p{1, -3, 0, 2};
  const ValueAndSlope vs = eval_with_derivative(p, 1.5);
  CHECK(std::abs(vs.value - p(1.5)) < 1e-14);
  CHECK(std::abs(vs.slope - derivative(p)(1.5)) < 1e-14);
}
