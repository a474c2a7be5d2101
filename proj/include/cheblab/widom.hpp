#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cheblab/chebyshev.hpp"
#include "cheblab/lemniscate.hpp"
#include "cheblab/potential.hpp"
#include "cheblab/realset.hpp"

namespace cheblab {

enum class CapacityMode { automatic, exact, estimate };
enum class CapacityProvenance { exact_period, lemniscate_formula, upper_estimate };
enum class SaturationVerdict { saturated_lower, saturated_complex, interior, not_applicable };

const char* to_string(CapacityMode m) noexcept;
const char* to_string(CapacityProvenance p) noexcept;
const char* to_string(SaturationVerdict v) noexcept;
CapacityMode parse_capacity_mode(const std::string& s);
CapacityProvenance parse_provenance(const std::string& s);
SaturationVerdict parse_verdict(const std::string& s);

struct WidomOptions {
  /// Largest degree tried when looking for a period or estimating capacity.
  int n_cap = 16;
  /// Hausdorff distance, relative to the hull length, under which E = e_m.
  double period_tol = 1e-8;
  ChebyshevOptions cheb;
  QuadOptions quad;
};

class CapacityUnavailableError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "capacity_unavailable"; }
};

/// Capacity of a real set. Exact when E equals its own e_m for some m <= n_cap
/// (then G_E is available in closed form), otherwise min_m (t_m / 2)^{1/m}.
struct CapacityInfo {
  double value = 0.0;
  CapacityProvenance provenance = CapacityProvenance::upper_estimate;
  /// Period m when exact, else the degree attaining the minimum.
  int degree = 0;
  std::optional<GreenEn> green;
};

/// Smallest m <= m_max with set_distance(E, e_m) <= tol * hull length.
std::optional<ChebyshevSolution> find_period(const IntervalUnion& e, const WidomOptions& opts = {});

CapacityInfo real_capacity(const IntervalUnion& e, CapacityMode mode, const WidomOptions& opts = {});

struct BoundStatus {
  bool ok = false;
  /// Signed distance to the bound, positive when it holds.
  double margin = 0.0;
};

struct WidomReport {
  int n = 0;
  double t = 0.0;
  double capacity = 0.0;
  CapacityProvenance provenance = CapacityProvenance::upper_estimate;
  int capacity_degree = 0;
  double W = 0.0;
  BoundStatus szego;
  std::optional<BoundStatus> schiefermayr;
  std::optional<BoundStatus> totik_widom;
  /// Parreau-Widom sum of E when exact, of the proxy e_m otherwise.
  std::optional<double> pw;
  SaturationVerdict saturation = SaturationVerdict::not_applicable;
};

WidomReport widom_factor(const IntervalUnion& e, int n, CapacityMode mode = CapacityMode::automatic,
                         const WidomOptions& opts = {});

/// Report for a solid lemniscate: W = 1 with the closed-form capacity.
WidomReport widom_factor(const LemniscateSet& ls);

struct RealSaturation {
  /// Set criterion: set_distance(E, e_n) <= tol.
  bool saturated = false;
  double set_distance = 0.0;
  /// Norm criterion: |t - 2 C^n| / t <= 1e-6 with the best available capacity.
  bool norm_condition = false;
  double norm_residual = 0.0;
  CapacityProvenance provenance = CapacityProvenance::upper_estimate;
  /// False when the two criteria disagree, which points at an inexact capacity.
  bool consistent = true;
  double W = 0.0;
  /// Delta_n = 2 T_n / t_n, the polynomial with E = Delta_n^{-1}([-2, 2]) when saturated.
  Polynomial witness;
};

RealSaturation saturation_real(const IntervalUnion& e, int n, double tol = 1e-8, const WidomOptions& opts = {});

/// (k, W_{nk}) for k = 1..k_max from independent solves at degree nk, with
/// C(E) = (t_n / 2)^{1/n}. Requires E = e_n.
std::vector<std::pair<int, double>> multiples_check(const IntervalUnion& e, int n, int k_max,
                                                   const WidomOptions& opts = {});

struct IdentityCheck {
  int n = 0;
  double log_t = 0.0;
  double log_two_cn = 0.0;
  double integral = 0.0;
  /// |log t_n - log(2 C^n) - n * integral|
  double residual = 0.0;
};

/// Norm identity t_n = 2 C(E)^n exp(n * int G_E d rho_{e_n}) with G_E exact.
IdentityCheck identity_3a5_check(const GreenEn& ge_set, const IntervalUnion& e, int n, const WidomOptions& opts = {});
/// Same, locating the period of E first; errors if E is not a period set.
IdentityCheck identity_3a5_check(const IntervalUnion& e, int n, const WidomOptions& opts = {});

struct TwoBandRow {
  int n;
  double W;
  bool odd;
  /// limit - W
  double gap;
};

struct TwoBandResult {
  double a = 0.0, b = 0.0;
  double capacity = 0.0;
  double green_at_zero = 0.0;
  /// 2 exp(G_E(0))
  double limit = 0.0;
  std::vector<TwoBandRow> rows;
  bool even_saturated = false;
  bool odd_in_range = false;
  bool odd_increasing = false;
  bool trend = false;
};

/// E = [-b, -a] u [a, b] = Q^{-1}([-2, 2]) with Q(x) = (4x^2 - 2(a^2 + b^2)) / (b^2 - a^2).
Polynomial two_band_quadratic(double a, double b);
TwoBandResult two_band_experiment(double a, double b, int n_max, const WidomOptions& opts = {});

struct AverageResult {
  /// (z, sigma(z)) at one point of each sampled fiber.
  std::vector<std::pair<cplx, cplx>> sigma_samples;
  Polynomial q_hat;
  /// 1 / leading coefficient of p.
  cplx gamma;
};

/// Mean of q over the fiber {zeta : p(zeta) = p(z)}, with multiplicity.
cplx fiber_average(const Polynomial& q, const Polynomial& p, cplx z);

/// q_hat with fiber_average(q, p, z) = q_hat(p(z)). Fibers are sampled over
/// d + 1 values of p on a circle (d = deg q / deg p) and q_hat is recovered by
/// discrete Fourier interpolation.
AverageResult average_over(const Polynomial& q, const Polynomial& p, unsigned seed = 1);

/// (|gamma| C_E)^{1/k} with gamma = 1 / leading coefficient of p, k = deg p.
double capacity_transfer(double c_e, const Polynomial& p);

class ComplexPreimageError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "preimage_complex"; }
};

/// Union of P^{-1}(band) over the bands of E; errors unless every point of
/// P^{-1}(E) is real.
IntervalUnion real_preimage(const IntervalUnion& e, const Polynomial& P);

struct TransferReport {
  int n = 0;
  int k = 0;
  IntervalUnion e_p;
  Polynomial composed;  // T_n(E) o P
  Polynomial direct;    // T_{nk}(E_P) solved independently
  double t_e = 0.0;
  double t_p = 0.0;
  double c_e = 0.0;
  double c_p = 0.0;
  CapacityProvenance provenance = CapacityProvenance::upper_estimate;
  double W_e = 0.0;
  double W_p = 0.0;
  /// max_i |composed_i - direct_i| / max(1, max_i |direct_i|)
  double coeff_deviation = 0.0;
  double t_deviation = 0.0;
  double W_deviation = 0.0;
};

TransferReport preimage_transfer(const IntervalUnion& e, const Polynomial& P, int n, const WidomOptions& opts = {});

}  // namespace cheblab
