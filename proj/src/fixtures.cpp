#include "cheblab/fixtures.hpp"

#include "cheblab/widom.hpp"

namespace cheblab {

namespace {

RealFixture from_polynomial(std::string name, Polynomial P) {
  IntervalUnion e = preimage_interval(P, -2.0, 2.0);
  return {std::move(name), std::move(e), std::move(P)};
}

}  // namespace

std::vector<RealFixture> preimage_fixtures() {
  return {
      from_polynomial("interval [-1,1]", Polynomial{0.0, 2.0}),
      from_polynomial("8x^2-6", Polynomial{-6.0, 0.0, 8.0}),
      from_polynomial("symmetric two-band a=1/2", two_band_quadratic(0.5, 1.0)),
      from_polynomial("2x^2-4", Polynomial{-4.0, 0.0, 2.0}),
      from_polynomial("3(x-1)^2-4", Polynomial{-1.0, -6.0, 3.0}),
      from_polynomial("x^3-4x", Polynomial{0.0, -4.0, 0.0, 1.0}),
      from_polynomial("x^3+x^2-4x", Polynomial{0.0, -4.0, 1.0, 1.0}),
      from_polynomial("x^4-5x^2+3", Polynomial{3.0, 0.0, -5.0, 0.0, 1.0}),
  };
}

std::vector<RealFixture> non_preimage_fixtures() {
  return {
      {"[0,1]u[2,2.5]", IntervalUnion({{0.0, 1.0}, {2.0, 2.5}}), std::nullopt},
      {"[-1,-0.3]u[0.5,1]", IntervalUnion({{-1.0, -0.3}, {0.5, 1.0}}), std::nullopt},
      {"[0,1]u[1.5,2]u[3,4]", IntervalUnion({{0.0, 1.0}, {1.5, 2.0}, {3.0, 4.0}}), std::nullopt},
      {"[-2,-1]u[0,0.2]u[1,2]", IntervalUnion({{-2.0, -1.0}, {0.0, 0.2}, {1.0, 2.0}}), std::nullopt},
      {"[-1,-0.5]u[0.6,1]", IntervalUnion({{-1.0, -0.5}, {0.6, 1.0}}), std::nullopt},
  };
}

std::vector<RealFixture> real_fixtures() {
  std::vector<RealFixture> out = preimage_fixtures();
  for (auto& f : non_preimage_fixtures()) out.push_back(std::move(f));
  return out;
}

}  // namespace cheblab
