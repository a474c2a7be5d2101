#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cheblab/error.hpp"
#include "cheblab/poly.hpp"
#include "cheblab/realset.hpp"

namespace cheblab {

/// Solid lemniscate {|P| <= alpha}; its boundary is the level curve {|P| = alpha}.
struct LemniscateSet {
  Polynomial P;
  double alpha = 1.0;
};

struct CurveSample {
  cplx z;
  /// Unwrapped argument: P(z) = alpha * exp(i theta).
  double theta;
  double weight;
};

/// Traced level curve. Each component is a closed loop whose last sample
/// repeats the first with zero weight.
struct LemniscateCurve {
  std::vector<std::vector<CurveSample>> components;
  std::vector<double> masses;
  /// Roots of P (with multiplicity) enclosed by each component.
  std::vector<int> enclosed_roots;
  int n = 0;
  double alpha = 0.0;
  Polynomial P;

  double total_mass() const;
};

class NearCriticalError : public Error {
 public:
  NearCriticalError(std::string what, std::vector<double> critical_values)
      : Error(std::move(what)), critical_values_(std::move(critical_values)) {}
  const char* kind() const noexcept override { return "near_critical"; }
  const std::vector<double>& critical_values() const noexcept { return critical_values_; }

 private:
  std::vector<double> critical_values_;
};

class BranchMatchError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "branch_match"; }
};

struct TraceOptions {
  /// Relative distance from alpha to any critical value |P(z0)| below which tracing is refused.
  double crit_tol = 1e-8;
  int max_halvings = 12;
};

/// |P(z0)| over the roots z0 of P', sorted.
std::vector<double> critical_values(const Polynomial& P);

/// Solves P(z) = alpha e^{i theta_j} at m equally spaced angles, follows the
/// n roots as continuing branches and joins branches into components by the
/// permutation they undergo over one full turn.
LemniscateCurve trace(const LemniscateSet& ls, int m, const TraceOptions& opts = {});

/// (alpha / |c|)^{1/n} for leading coefficient c.
double capacity(const LemniscateSet& ls);

struct ChebyshevPair {
  Polynomial T;
  double t;
};

/// The monic multiple P / c and its sup norm alpha / |c| on the set.
ChebyshevPair chebyshev_for(const LemniscateSet& ls);

/// Even-odd test against each traced polygon; points within tol of a polygon
/// edge count as on the curve.
enum class Location { outside, on_curve, inside };
Location locate(const LemniscateCurve& curve, cplx w, double tol = 1e-9);

/// Logarithmic potential of the traced equilibrium measure, sum of weight * log|z - w|.
/// w must lie outside every component.
double potential_at(const LemniscateCurve& curve, cplx w);

/// Closed membership test with tolerance, for saturation checks.
struct Membership {
  std::string name;
  std::function<bool(cplx, double)> contains;
};

Membership disk_membership(cplx center, double radius);
Membership circle_membership(cplx center, double radius);
Membership interval_union_membership(const IntervalUnion& e);
Membership lemniscate_membership(const LemniscateSet& ls);

struct ComplexSaturation {
  std::size_t samples = 0;
  std::size_t inside = 0;
  double fraction = 0.0;
  bool saturated = false;
  /// t / C({|T| <= t})^n, identically 1 for monic T.
  double norm_ratio = 0.0;
};

/// Traces {|T| = t} and tests every sample against the membership predicate.
ComplexSaturation saturation_complex(const Membership& e, const Polynomial& T, double t, int m = 1024,
                                     double tol = 1e-9);

}  // namespace cheblab
