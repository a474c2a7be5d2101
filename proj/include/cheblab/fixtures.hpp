#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cheblab/poly.hpp"
#include "cheblab/realset.hpp"

namespace cheblab {

/// Real test set. Preimage fixtures carry P with E = P^{-1}([-2, 2]).
struct RealFixture {
  std::string name;
  IntervalUnion set;
  std::optional<Polynomial> defining;

  int period() const { return defining ? defining->degree() : 0; }
};

std::vector<RealFixture> preimage_fixtures();
std::vector<RealFixture> non_preimage_fixtures();
std::vector<RealFixture> real_fixtures();

}  // namespace cheblab
