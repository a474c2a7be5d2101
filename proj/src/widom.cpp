#include "cheblab/widom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cheblab {

const char* to_string(CapacityMode m) noexcept {
  switch (m) {
    case CapacityMode::automatic: return "auto";
    case CapacityMode::exact: return "exact";
    case CapacityMode::estimate: return "estimate";
  }
  return "?";
}

const char* to_string(CapacityProvenance p) noexcept {
  switch (p) {
    case CapacityProvenance::exact_period: return "exact-period";
    case CapacityProvenance::lemniscate_formula: return "lemniscate-formula";
    case CapacityProvenance::upper_estimate: return "upper-estimate";
  }
  return "?";
}

const char* to_string(SaturationVerdict v) noexcept {
  switch (v) {
    case SaturationVerdict::saturated_lower: return "saturated-lower";
    case SaturationVerdict::saturated_complex: return "saturated-complex";
    case SaturationVerdict::interior: return "interior";
    case SaturationVerdict::not_applicable: return "not-applicable";
  }
  return "?";
}

CapacityMode parse_capacity_mode(const std::string& s) {
  if (s == "auto") return CapacityMode::automatic;
  if (s == "exact") return CapacityMode::exact;
  if (s == "estimate") return CapacityMode::estimate;
  throw std::invalid_argument("unknown capacity mode '" + s + "' (expected auto, exact or estimate)");
}

CapacityProvenance parse_provenance(const std::string& s) {
  for (auto p : {CapacityProvenance::exact_period, CapacityProvenance::lemniscate_formula,
                 CapacityProvenance::upper_estimate})
    if (s == to_string(p)) return p;
  throw std::invalid_argument("unknown capacity provenance '" + s + "'");
}

SaturationVerdict parse_verdict(const std::string& s) {
  for (auto v : {SaturationVerdict::saturated_lower, SaturationVerdict::saturated_complex,
                 SaturationVerdict::interior, SaturationVerdict::not_applicable})
    if (s == to_string(v)) return v;
  throw std::invalid_argument("unknown saturation verdict '" + s + "'");
}

namespace {

double hull_length(const IntervalUnion& e) { return e.upper() - e.lower(); }

bool is_own_period_set(const IntervalUnion& e, const ChebyshevSolution& sol, double tol) {
  return set_distance(e, en_set(sol)) <= tol * hull_length(e);
}

}  // namespace

std::optional<ChebyshevSolution> find_period(const IntervalUnion& e, const WidomOptions& opts) {
  for (int m = 1; m <= opts.n_cap; ++m) {
    ChebyshevSolution sol = solve(e, m, opts.cheb);
    if (is_own_period_set(e, sol, opts.period_tol)) return sol;
  }
  return std::nullopt;
}

CapacityInfo real_capacity(const IntervalUnion& e, CapacityMode mode, const WidomOptions& opts) {
  if (mode != CapacityMode::estimate) {
    if (auto sol = find_period(e, opts)) {
      GreenEn g = GreenEn::from_solution(*sol);
      return {g.capacity, CapacityProvenance::exact_period, sol->n, std::move(g)};
    }
    if (mode == CapacityMode::exact)
      throw CapacityUnavailableError("exact capacity unavailable: set is not e_m for any m <= " +
                                     std::to_string(opts.n_cap));
  }
  const CapacitySequence seq = capacity_upper_sequence(e, opts.n_cap, opts.cheb);
  return {seq.min, CapacityProvenance::upper_estimate, seq.argmin, std::nullopt};
}

WidomReport widom_factor(const IntervalUnion& e, int n, CapacityMode mode, const WidomOptions& opts) {
  if (n < 1) throw std::invalid_argument("widom_factor: n must be >= 1");
  const ChebyshevSolution sol = solve(e, n, opts.cheb);
  CapacityInfo cap = real_capacity(e, mode, opts);
  if (cap.provenance == CapacityProvenance::upper_estimate) {
    // (t_n / 2)^{1/n} is itself an upper bound; including it keeps W >= 2 by construction.
    const double s_n = std::pow(sol.t / 2.0, 1.0 / n);
    if (s_n < cap.value) {
      cap.value = s_n;
      cap.degree = n;
    }
  }

  WidomReport r;
  r.n = n;
  r.t = sol.t;
  r.capacity = cap.value;
  r.provenance = cap.provenance;
  r.capacity_degree = cap.degree;
  r.W = sol.t / std::pow(cap.value, n);
  r.szego = {r.W >= 1.0 - 1e-9, r.W - 1.0};
  r.schiefermayr = BoundStatus{r.W >= 2.0 - 1e-9, r.W - 2.0};
  if (cap.green) {
    r.pw = pw_sum(*cap.green);
    const double upper = 2.0 * std::exp(*r.pw);
    r.totik_widom = BoundStatus{r.W <= upper + 1e-6, upper - r.W};
  } else {
    const int m = std::max(opts.n_cap, n);
    r.pw = pw_sum(GreenEn::from_solution(solve(e, m, opts.cheb)));
  }
  r.saturation = is_own_period_set(e, sol, opts.period_tol) ? SaturationVerdict::saturated_lower
                                                            : SaturationVerdict::interior;
  return r;
}

WidomReport widom_factor(const LemniscateSet& ls) {
  const ChebyshevPair ch = chebyshev_for(ls);
  WidomReport r;
  r.n = ls.P.degree();
  r.t = ch.t;
  r.capacity = capacity(ls);
  r.provenance = CapacityProvenance::lemniscate_formula;
  r.capacity_degree = r.n;
  r.W = ch.t / std::pow(r.capacity, r.n);
  r.szego = {r.W >= 1.0 - 1e-9, r.W - 1.0};
  r.saturation = SaturationVerdict::saturated_complex;
  return r;
}

RealSaturation saturation_real(const IntervalUnion& e, int n, double tol, const WidomOptions& opts) {
  const ChebyshevSolution sol = solve(e, n, opts.cheb);
  const CapacityInfo cap = real_capacity(e, CapacityMode::automatic, opts);
  RealSaturation r;
  r.set_distance = set_distance(e, en_set(sol));
  r.saturated = r.set_distance <= tol * hull_length(e);
  const double two_cn = 2.0 * std::pow(cap.value, n);
  r.norm_residual = std::abs(sol.t - two_cn) / sol.t;
  r.norm_condition = r.norm_residual <= 1e-6;
  r.provenance = cap.provenance;
  r.consistent = r.saturated == r.norm_condition;
  r.W = sol.t / std::pow(cap.value, n);
  r.witness = delta(sol);
  return r;
}

std::vector<std::pair<int, double>> multiples_check(const IntervalUnion& e, int n, int k_max,
                                                   const WidomOptions& opts) {
  if (k_max < 1) throw std::invalid_argument("multiples_check: k_max must be >= 1");
  const ChebyshevSolution base = solve(e, n, opts.cheb);
  if (!is_own_period_set(e, base, opts.period_tol))
    throw std::invalid_argument("multiples_check: E is not saturated at degree " + std::to_string(n));
  const double c = std::pow(base.t / 2.0, 1.0 / n);
  std::vector<std::pair<int, double>> out;
  for (int k = 1; k <= k_max; ++k) {
    const ChebyshevSolution s = k == 1 ? base : solve(e, n * k, opts.cheb);
    out.emplace_back(k, s.t / std::pow(c, n * k));
  }
  return out;
}

IdentityCheck identity_3a5_check(const GreenEn& ge_set, const IntervalUnion& e, int n, const WidomOptions& opts) {
  const ChebyshevSolution sol = solve(e, n, opts.cheb);
  const GreenEn ge = GreenEn::from_solution(sol);
  std::vector<double> breaks;
  for (const Band& b : ge_set.en.bands()) {
    breaks.push_back(b.lo);
    breaks.push_back(b.hi);
  }
  IdentityCheck r;
  r.n = n;
  r.integral = eq_integrate(ge, [&](double x) { return green(ge_set, x); }, breaks, opts.quad);
  r.log_t = std::log(sol.t);
  r.log_two_cn = std::numbers::ln2 + n * std::log(ge_set.capacity);
  r.residual = std::abs(r.log_t - r.log_two_cn - n * r.integral);
  return r;
}

IdentityCheck identity_3a5_check(const IntervalUnion& e, int n, const WidomOptions& opts) {
  const auto period = find_period(e, opts);
  if (!period)
    throw std::invalid_argument("identity_3a5_check: set is not e_m for any m <= " + std::to_string(opts.n_cap));
  return identity_3a5_check(GreenEn::from_solution(*period), e, n, opts);
}

Polynomial two_band_quadratic(double a, double b) {
  const double w = b * b - a * a;
  return Polynomial{-2.0 * (a * a + b * b) / w, 0.0, 4.0 / w};
}

TwoBandResult two_band_experiment(double a, double b, int n_max, const WidomOptions& opts) {
  if (!(a > 0.0 && a < b)) throw std::invalid_argument("two_band_experiment: requires 0 < a < b");
  if (n_max < 1) throw std::invalid_argument("two_band_experiment: n_max must be >= 1");
  const IntervalUnion e({{-b, -a}, {a, b}});
  const GreenEn ge = GreenEn::from_delta(two_band_quadratic(a, b));
  if (set_distance(ge.en, e) > 1e-10 * b) throw Error("two_band_experiment: quadratic preimage does not reproduce E");

  TwoBandResult r;
  r.a = a;
  r.b = b;
  r.capacity = ge.capacity;
  r.green_at_zero = green(ge, 0.0);
  r.limit = 2.0 * std::exp(r.green_at_zero);
  for (int n = 1; n <= n_max; ++n) {
    const double W = solve(e, n, opts.cheb).t / std::pow(r.capacity, n);
    r.rows.push_back({n, W, n % 2 == 1, r.limit - W});
  }
  r.even_saturated = true;
  r.odd_in_range = true;
  r.odd_increasing = true;
  double prev = -std::numeric_limits<double>::infinity();
  std::optional<double> gap3, gap_last;
  for (const TwoBandRow& row : r.rows) {
    if (!row.odd) {
      r.even_saturated = r.even_saturated && std::abs(row.W - 2.0) <= 1e-6;
      continue;
    }
    r.odd_in_range = r.odd_in_range && row.W > 2.0 && row.W <= r.limit + 1e-9;
    r.odd_increasing = r.odd_increasing && row.W > prev;
    prev = row.W;
    if (row.n == 3) gap3 = std::abs(row.gap);
    gap_last = std::abs(row.gap);
  }
  r.trend = gap3 && gap_last && *gap_last < *gap3;
  return r;
}

namespace {

struct FiberMean {
  cplx point;
  cplx mean;
};

FiberMean level_average(const Polynomial& q, const Polynomial& p, cplx w) {
  std::vector<cplx> c = p.coeffs();
  c[0] -= w;
  const std::vector<cplx> fiber = roots(Polynomial(std::move(c)));
  cplx s = 0.0;
  for (cplx z : fiber) s += q(z);
  return {fiber.front(), s / static_cast<double>(fiber.size())};
}

}  // namespace

cplx fiber_average(const Polynomial& q, const Polynomial& p, cplx z) {
  if (p.degree() < 1) throw std::invalid_argument("fiber_average: p must have degree >= 1");
  return level_average(q, p, p(z)).mean;
}

AverageResult average_over(const Polynomial& q, const Polynomial& p, unsigned seed) {
  const int k = p.degree();
  if (k < 1) throw std::invalid_argument("average_over: p must have degree >= 1");
  AverageResult r;
  r.gamma = 1.0 / p.leading();
  if (q.is_zero()) return r;
  const int d = q.degree() / k;
  const int count = d + 1;

  std::vector<cplx> crit_values;
  if (k >= 2)
    for (cplx z : roots(derivative(p))) crit_values.push_back(p(z));

  // Levels on the circle |w - p(0)| = R with R the radius of p(unit circle)
  // about p(0), rotated until no level is a critical value of p.
  const cplx center = p(0.0);
  double radius = 0.0;
  for (int i = 0; i < 64; ++i) radius = std::max(radius, std::abs(p(std::polar(1.0, 2.0 * std::numbers::pi * i / 64)) - center));
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  double phi = 0.3;
  std::vector<cplx> levels;
  for (int attempt = 0;; ++attempt) {
    levels.clear();
    bool clash = false;
    for (int i = 0; i < count; ++i) {
      const cplx w = center + std::polar(radius, phi + 2.0 * std::numbers::pi * i / count);
      for (cplx v : crit_values) clash = clash || std::abs(w - v) <= 1e-6 * radius;
      levels.push_back(w);
    }
    if (!clash) break;
    if (attempt >= 16) throw Error("average_over: sample levels keep meeting critical values of p");
    phi = angle(rng);
  }

  std::vector<cplx> sigma(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const FiberMean f = level_average(q, p, levels[static_cast<size_t>(i)]);
    sigma[static_cast<size_t>(i)] = f.mean;
    r.sigma_samples.emplace_back(f.point, f.mean);
  }

  // sigma_i = sum_j c_j e^{i j phi} omega^{i j} in u = (w - center) / R; invert the DFT.
  std::vector<cplx> coeffs(static_cast<size_t>(count));
  for (int j = 0; j < count; ++j) {
    cplx acc = 0.0;
    for (int i = 0; i < count; ++i) acc += sigma[static_cast<size_t>(i)] * std::polar(1.0, -2.0 * std::numbers::pi * i * j / count);
    coeffs[static_cast<size_t>(j)] = acc / static_cast<double>(count) * std::polar(1.0, -j * phi);
  }
  r.q_hat = compose(Polynomial(std::move(coeffs)), Polynomial(std::vector<cplx>{-center / radius, 1.0 / radius}));
  return r;
}

double capacity_transfer(double c_e, const Polynomial& p) {
  const int k = p.degree();
  if (k < 1 || p.leading() == cplx{}) throw std::invalid_argument("capacity_transfer: p must have degree >= 1");
  return std::pow(c_e / std::abs(p.leading()), 1.0 / k);
}

IntervalUnion real_preimage(const IntervalUnion& e, const Polynomial& P) {
  if (P.degree() < 1) throw std::invalid_argument("real_preimage: P must have degree >= 1");
  if (!P.is_real(1e-12)) throw std::invalid_argument("real_preimage: P must have real coefficients");
  std::vector<double> crit;
  if (P.degree() >= 2)
    for (cplx z : roots(derivative(P))) {
      const cplx v = P(z);
      if (std::abs(v.imag()) <= 1e-9 * (1.0 + std::abs(v))) crit.push_back(v.real());
    }

  std::vector<Band> bands;
  for (const Band& b : e.bands()) {
    // The number of real roots of P - y only changes at critical values, so
    // one level per stretch between them decides reality for the whole band.
    std::vector<double> levels{b.lo, b.hi};
    for (double v : crit)
      if (v > b.lo && v < b.hi) levels.push_back(v);
    std::sort(levels.begin(), levels.end());
    for (size_t i = 0; i + 1 < levels.size(); ++i) {
      const double y = 0.5 * (levels[i] + levels[i + 1]);
      std::vector<cplx> c = P.coeffs();
      c[0] -= y;
      for (cplx z : roots(Polynomial(std::move(c))))
        if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z)))
          throw ComplexPreimageError("real_preimage: P^{-1}([" + std::to_string(b.lo) + ", " + std::to_string(b.hi) +
                                     "]) is not contained in the real line");
    }
    const IntervalUnion pre = preimage_interval(P, b.lo, b.hi);
    bands.insert(bands.end(), pre.bands().begin(), pre.bands().end());
  }
  return IntervalUnion(std::move(bands));
}

TransferReport preimage_transfer(const IntervalUnion& e, const Polynomial& P, int n, const WidomOptions& opts) {
  if (n < 1) throw std::invalid_argument("preimage_transfer: n must be >= 1");
  if (P.degree() < 1 || std::abs(P.leading() - 1.0) > 1e-12)
    throw std::invalid_argument("preimage_transfer: P must be monic of degree >= 1");
  const int k = P.degree();
  IntervalUnion e_p = real_preimage(e, P);
  const ChebyshevSolution sol_e = solve(e, n, opts.cheb);
  const ChebyshevSolution sol_p = solve(e_p, n * k, opts.cheb);
  Polynomial composed = compose(sol_e.T, P);

  double dev = 0.0, scale = 1.0;
  for (int i = 0; i <= n * k; ++i) {
    dev = std::max(dev, std::abs(composed.coeff(i) - sol_p.T.coeff(i)));
    scale = std::max(scale, std::abs(sol_p.T.coeff(i)));
  }
  const CapacityInfo cap = real_capacity(e, CapacityMode::automatic, opts);
  const double c_p = capacity_transfer(cap.value, P);
  const double W_e = sol_e.t / std::pow(cap.value, n);
  const double W_p = sol_p.t / std::pow(c_p, n * k);
  return TransferReport{n,
                        k,
                        std::move(e_p),
                        std::move(composed),
                        sol_p.T,
                        sol_e.t,
                        sol_p.t,
                        cap.value,
                        c_p,
                        cap.provenance,
                        W_e,
                        W_p,
                        dev / scale,
                        std::abs(sol_p.t - sol_e.t) / sol_e.t,
                        std::abs(W_p - W_e) / W_e};
}

}  // namespace cheblab
