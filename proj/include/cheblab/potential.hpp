#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cheblab/chebyshev.hpp"
#include "cheblab/error.hpp"
#include "cheblab/poly.hpp"
#include "cheblab/realset.hpp"

namespace cheblab {

/// Green's function data of a period set en = delta^{-1}([-2, 2]).
struct GreenEn {
  Polynomial delta;
  int n = 0;
  IntervalUnion en;
  double capacity = 0.0;

  /// From a converged Chebyshev solution: delta = 2T/t, capacity (t/2)^{1/n}.
  static GreenEn from_solution(const ChebyshevSolution& sol);
  /// From any real polynomial whose preimage of [-2, 2] is real;
  /// capacity = |1/lead|^{1/n}.
  static GreenEn from_delta(Polynomial delta);
};

struct GapCritical {
  double w;
  double g_value;
  Gap gap;
};

class QuadratureError : public Error {
 public:
  QuadratureError(std::string what, double estimate, double error_estimate)
      : Error(std::move(what)), estimate_(estimate), error_estimate_(error_estimate) {}
  const char* kind() const noexcept override { return "quadrature"; }
  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

double green(const GreenEn& ge, cplx z);

/// Equilibrium density |delta'(x)| / (pi n sqrt(4 - delta(x)^2)); x must lie in en.
double eq_density(const GreenEn& ge, double x);

struct QuadOptions {
  double abs_tol = 1e-9;
  /// Relative agreement requested between successive refinements.
  double rel_tol = 1e-10;
  unsigned max_depth = 18;
};

/// Integral of f against the equilibrium measure of en. Each band is cut at
/// any `breakpoints` inside it and every piece is integrated with x = a + s^2
/// from both ends, which removes inverse square root endpoint behavior.
double eq_integrate(const GreenEn& ge, const std::function<double(double)>& f,
                    std::span<const double> breakpoints = {}, const QuadOptions& opts = {});

/// Equilibrium mass of each band of en.
std::vector<double> band_masses(const GreenEn& ge, const QuadOptions& opts = {});

/// The zero of delta' in each gap of en, with the Green's function there.
std::vector<GapCritical> gap_criticals(const GreenEn& ge);

/// Sum of the Green's function over the gap critical points.
double pw_sum(const GreenEn& ge);

struct CapacitySequence {
  /// s[n-1] = (t_n / 2)^{1/n}, each an upper bound for C(E).
  std::vector<double> s;
  double min;
  int argmin;
};

CapacitySequence capacity_upper_sequence(const IntervalUnion& e, int n_max, const ChebyshevOptions& opts = {});

}  // namespace cheblab
