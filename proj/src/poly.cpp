#include "cheblab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cheblab {

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<double> real_coeffs)
    : coeffs_(real_coeffs.begin(), real_coeffs.end()) {
  trim();
}

Polynomial Polynomial::from_real(std::span<const double> coeffs) {
  return Polynomial(std::vector<cplx>(coeffs.begin(), coeffs.end()));
}

Polynomial Polynomial::constant(cplx c) { return Polynomial(std::vector<cplx>{c}); }

Polynomial Polynomial::monomial(int degree, cplx c) {
  if (degree < 0) throw std::invalid_argument("Polynomial::monomial: negative degree");
  std::vector<cplx> v(static_cast<size_t>(degree) + 1, 0.0);
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(std::span<const cplx> rts, cplx lead) {
  std::vector<cplx> c{lead};
  for (cplx r : rts) {
    c.push_back(0.0);
    for (size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -r * c[0];
  }
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

cplx Polynomial::coeff(int i) const noexcept {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return {};
  return coeffs_[static_cast<size_t>(i)];
}

bool Polynomial::is_real(double tol) const noexcept {
  const double scale = max_abs_coeff();
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [&](cplx c) { return std::abs(c.imag()) <= tol * scale; });
}

std::vector<double> Polynomial::real_coeffs() const {
  std::vector<double> out(coeffs_.size());
  std::transform(coeffs_.begin(), coeffs_.end(), out.begin(), [](cplx c) { return c.real(); });
  return out;
}

double Polynomial::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (cplx c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

cplx Polynomial::operator()(cplx z) const noexcept {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double Polynomial::eval_real(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->real();
  return acc;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (cplx& c : r.coeffs_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial& Polynomial::operator*=(cplx s) {
  for (cplx& c : coeffs_) c *= s;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

cplx eval(const Polynomial& p, cplx z) { return p(z); }

ValueAndSlope eval_with_derivative(const Polynomial& p, cplx z) {
  const auto& c = p.coeffs();
  cplx v{}, d{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    d = d * z + v;
    v = v * z + *it;
  }
  return {v, d};
}

Polynomial derivative(const Polynomial& p) {
  const auto& c = p.coeffs();
  if (c.size() <= 1) return {};
  std::vector<cplx> d(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
  return Polynomial(std::move(d));
}

Polynomial compose(const Polynomial& outer, const Polynomial& inner) {
  Polynomial acc;
  const auto& c = outer.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * inner + Polynomial::constant(*it);
  return acc;
}

double relative_residual(const Polynomial& p, cplx z) noexcept {
  const double az = std::abs(z);
  double scale = 0.0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) scale = scale * az + std::abs(*it);
  if (scale == 0.0) return 0.0;
  return std::abs(p(z)) / scale;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Fujiwara bound on the root moduli of a monic polynomial.
double root_radius(const std::vector<cplx>& monic) {
  const size_t n = monic.size() - 1;
  double r = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double a = std::abs(monic[i]) / (i == 0 ? 2.0 : 1.0);
    r = std::max(r, std::pow(a, 1.0 / static_cast<double>(n - i)));
  }
  return 2.0 * r;
}

std::vector<cplx> aberth(const Polynomial& monic, int max_iters, bool& converged) {
  const int n = monic.degree();
  const cplx center = -monic.coeff(n - 1) / static_cast<double>(n);
  // Radius of the shifted polynomial keeps the starting circle tight around the roots.
  const Polynomial shifted = compose(monic, Polynomial(std::vector<cplx>{center, 1.0}));
  double radius = root_radius(shifted.coeffs());
  if (radius == 0.0) radius = 1.0;

  std::vector<cplx> z(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double ang = 2.0 * std::numbers::pi * k / n + 0.4;
    z[static_cast<size_t>(k)] = center + radius * cplx(std::cos(ang), std::sin(ang));
  }

  std::vector<bool> done(static_cast<size_t>(n), false);
  converged = false;
  for (int iter = 0; iter < max_iters; ++iter) {
    bool all_done = true;
    for (size_t k = 0; k < z.size(); ++k) {
      if (done[k]) continue;
      const auto [v, d] = eval_with_derivative(monic, z[k]);
      if (relative_residual(monic, z[k]) <= 4.0 * kEps) {
        done[k] = true;
        continue;
      }
      const cplx ratio = v / d;
      cplx sum{};
      for (size_t j = 0; j < z.size(); ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      cplx step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = cplx(radius * 1e-3, radius * 1e-3);
      z[k] -= step;
      if (std::abs(step) <= 2.0 * kEps * std::abs(z[k])) done[k] = true;
      else all_done = false;
    }
    if (all_done) {
      converged = true;
      break;
    }
  }
  return z;
}

}  // namespace

namespace {

// Multiple roots come back spread over a disk of radius ~ eps^{1/m}. Each
// cluster of m nearby roots is replaced by the simple root of p^{(m-1)} near
// its mean when that does not raise the residual.
void refine_clusters(const Polynomial& p, std::vector<cplx>& z) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  std::vector<int> group(z.size(), -1);
  int groups = 0;
  for (size_t i = 0; i < z.size(); ++i) {
    if (group[i] >= 0) continue;
    group[i] = groups;
    for (size_t k = i; k < z.size(); ++k) {
      if (group[k] != groups) continue;
      for (size_t j = i + 1; j < z.size(); ++j)
        if (group[j] < 0 && std::abs(z[j] - z[k]) <= 1e-3 * (1.0 + std::abs(z[k]))) group[j] = groups;
    }
    ++groups;
  }
  for (int g = 0; g < groups; ++g) {
    std::vector<size_t> members;
    for (size_t i = 0; i < z.size(); ++i)
      if (group[i] == g) members.push_back(i);
    const int m = static_cast<int>(members.size());
    if (m < 2) continue;
    cplx w = 0.0;
    double worst = 0.0;
    for (size_t i : members) {
      w += z[i];
      worst = std::max(worst, relative_residual(p, z[i]));
    }
    w /= static_cast<double>(m);
    Polynomial d = p;
    for (int k = 1; k < m; ++k) d = derivative(d);
    for (int it = 0; it < 20; ++it) {
      const auto [v, s] = eval_with_derivative(d, w);
      if (s == cplx{}) break;
      const cplx step = v / s;
      w -= step;
      if (std::abs(step) <= 4 * kEps * (1.0 + std::abs(w))) break;
    }
    if (!(relative_residual(p, w) <= std::max(worst, 8 * kEps))) continue;
    for (size_t i : members) z[i] = w;
  }
}

}  // namespace

std::vector<cplx> roots(const Polynomial& p, const RootOptions& opts) {
  if (p.degree() < 1) throw std::invalid_argument("roots: polynomial degree must be >= 1");

  std::vector<cplx> out;
  // Exact zero roots are split off first.
  std::vector<cplx> c = p.coeffs();
  size_t zeros = 0;
  while (zeros < c.size() && c[zeros] == cplx{}) ++zeros;
  out.assign(zeros, cplx{});
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));
  if (c.size() <= 1) return out;

  const cplx lead = c.back();
  for (cplx& x : c) x /= lead;
  const Polynomial monic(std::move(c));

  if (monic.degree() == 1) {
    out.push_back(-monic.coeff(0));
    return out;
  }

  bool converged = false;
  std::vector<cplx> z = aberth(monic, opts.max_iters, converged);

  if (opts.polish) {
    for (cplx& r : z) {
      double res = relative_residual(monic, r);
      for (int it = 0; it < 5 && res > 0.0; ++it) {
        const auto [v, d] = eval_with_derivative(monic, r);
        if (d == cplx{}) break;
        const cplx cand = r - v / d;
        const double cres = relative_residual(monic, cand);
        if (!(cres < res)) break;
        r = cand;
        res = cres;
      }
    }
    refine_clusters(monic, z);
  }

  std::vector<double> residuals(z.size());
  bool ok = true;
  for (size_t k = 0; k < z.size(); ++k) {
    residuals[k] = relative_residual(monic, z[k]);
    if (!(residuals[k] <= opts.tol_resid)) ok = false;
  }
  if (!ok) {
    throw RootConvergenceError(
        "roots: Aberth iteration did not converge (degree " + std::to_string(monic.degree()) + ")",
        std::move(residuals));
  }
  out.insert(out.end(), z.begin(), z.end());
  return out;
}

std::vector<RootCluster> cluster_roots(std::span<const cplx> rts, double tol) {
  std::vector<RootCluster> out;
  std::vector<bool> used(rts.size(), false);
  for (size_t i = 0; i < rts.size(); ++i) {
    if (used[i]) continue;
    cplx sum = rts[i];
    int mult = 1;
    used[i] = true;
    for (size_t j = i + 1; j < rts.size(); ++j) {
      if (!used[j] && std::abs(rts[j] - rts[i]) <= tol) {
        used[j] = true;
        sum += rts[j];
        ++mult;
      }
    }
    out.push_back({sum / static_cast<double>(mult), mult});
  }
  return out;
}

std::vector<double> real_critical_points(const Polynomial& p) {
  if (p.degree() < 2) return {};
  const Polynomial dp = derivative(p);
  const Polynomial ddp = derivative(dp);
  std::vector<double> xs;
  for (cplx r : roots(dp)) {
    if (std::abs(r.imag()) > 1e-6 * (1.0 + std::abs(r))) continue;
    double x = r.real();
    for (int it = 0; it < 3; ++it) {
      const double d2 = ddp.eval_real(x);
      if (d2 == 0.0) break;
      const double step = dp.eval_real(x) / d2;
      if (!(std::abs(step) < 1e-6 * (1.0 + std::abs(x)))) break;
      x -= step;
    }
    xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)); }),
           xs.end());
  return xs;
}

}  // namespace cheblab
