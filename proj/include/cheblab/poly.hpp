#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include "cheblab/error.hpp"

namespace cheblab {

using cplx = std::complex<double>;

/// Dense univariate polynomial with complex coefficients stored in ascending
/// degree order. Trailing exact zeros are trimmed, so the leading coefficient
/// is nonzero unless the polynomial is identically zero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);
  Polynomial(std::initializer_list<double> real_coeffs);

  static Polynomial from_real(std::span<const double> coeffs);
  static Polynomial constant(cplx c);
  static Polynomial monomial(int degree, cplx c = 1.0);
  /// c * prod (z - r_j)
  static Polynomial from_roots(std::span<const cplx> roots, cplx lead = 1.0);

  int degree() const noexcept { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  cplx coeff(int i) const noexcept;
  cplx leading() const noexcept { return coeffs_.empty() ? cplx{} : coeffs_.back(); }

  /// True when every imaginary part is at most tol times the largest modulus.
  bool is_real(double tol = 0.0) const noexcept;
  std::vector<double> real_coeffs() const;
  double max_abs_coeff() const noexcept;

  cplx operator()(cplx z) const noexcept;
  double eval_real(double x) const noexcept;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(cplx s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, cplx s) { return a *= s; }
  friend Polynomial operator*(cplx s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<cplx> coeffs_;
};

cplx eval(const Polynomial& p, cplx z);
Polynomial derivative(const Polynomial& p);
/// Exact coefficient expansion of outer(inner(z)).
Polynomial compose(const Polynomial& outer, const Polynomial& inner);

/// Value and first derivative in one Horner pass.
struct ValueAndSlope {
  cplx value;
  cplx slope;
};
ValueAndSlope eval_with_derivative(const Polynomial& p, cplx z);

struct RootOptions {
  int max_iters = 500;
  /// Residual bound relative to sum_i |c_i| |z|^i.
  double tol_resid = 1e-10;
  bool polish = true;
};

class RootConvergenceError : public Error {
 public:
  RootConvergenceError(std::string what, std::vector<double> residuals)
      : Error(std::move(what)), residuals_(std::move(residuals)) {}
  const char* kind() const noexcept override { return "root_convergence"; }
  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<double> residuals_;
};

/// All complex roots with multiplicity (Aberth-Ehrlich iteration, then
/// Newton polishing). Requires degree >= 1.
std::vector<cplx> roots(const Polynomial& p, const RootOptions& opts = {});

/// Backward-error style residual |p(z)| / sum_i |c_i| |z|^i.
double relative_residual(const Polynomial& p, cplx z) noexcept;

struct RootCluster {
  cplx value;
  int multiplicity;
};
/// Groups roots closer than tol into one root with multiplicity.
std::vector<RootCluster> cluster_roots(std::span<const cplx> rts, double tol = 1e-6);

/// Real roots of p', sorted, for a polynomial with real coefficients.
/// Near-double critical points may be reported once or twice.
std::vector<double> real_critical_points(const Polynomial& p);

}  // namespace cheblab
