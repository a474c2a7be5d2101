#pragma once

#include <vector>

#include "cheblab/error.hpp"
#include "cheblab/poly.hpp"
#include "cheblab/realset.hpp"

namespace cheblab {

struct ChebyshevOptions {
  /// Grid points per band; 0 selects max(64, 16 n).
  int grid_per_band = 0;
  /// Relative gap (t - lower_bound) / t required on return. Floored at 1e-12.
  double certificate_tol = 1e-10;
  int max_iters = 200;
};

struct Extremum {
  double x;
  int sign;
};

/// Monic minimizer T of sup_E |T| over degree-n monic polynomials, with
/// t = sup_E |T| and a de la Vallee Poussin lower bound on the optimum.
struct ChebyshevSolution {
  Polynomial T;
  double t = 0.0;
  std::vector<Extremum> extrema;
  double lower_bound = 0.0;
  IntervalUnion E;
  int n = 0;
  /// Final alternating reference (n + 1 points of E).
  std::vector<double> reference;

  double certificate_gap() const noexcept { return (t - lower_bound) / t; }
};

class ChebyshevConvergenceError : public Error {
 public:
  ChebyshevConvergenceError(std::string what, double lower, double upper)
      : Error(std::move(what)), lower_(lower), upper_(upper) {}
  const char* kind() const noexcept override { return "chebyshev_convergence"; }
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

/// Discrete exchange on a per-band Chebyshev grid followed by continuum
/// refinement of the reference until the enclosure closes.
ChebyshevSolution solve(const IntervalUnion& e, int n, const ChebyshevOptions& opts = {});

/// T^{-1}([-t, t]) on the real line.
IntervalUnion en_set(const ChebyshevSolution& sol);

/// 2 T / t.
Polynomial delta(const ChebyshevSolution& sol);

}  // namespace cheblab
