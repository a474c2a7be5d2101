#include "cheblab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

namespace cheblab {

GreenEn GreenEn::from_solution(const ChebyshevSolution& sol) {
  return GreenEn{cheblab::delta(sol), sol.n, en_set(sol), std::pow(sol.t / 2.0, 1.0 / sol.n)};
}

GreenEn GreenEn::from_delta(Polynomial d) {
  if (d.degree() < 1) throw std::invalid_argument("GreenEn::from_delta: degree must be >= 1");
  if (!d.is_real(1e-12)) throw std::invalid_argument("GreenEn::from_delta: coefficients must be real");
  const int n = d.degree();
  const double cap = std::pow(1.0 / std::abs(d.leading()), 1.0 / n);
  IntervalUnion en = preimage_interval(d, -2.0, 2.0);
  return GreenEn{std::move(d), n, std::move(en), cap};
}

double green(const GreenEn& ge, cplx z) {
  const cplx d = ge.delta(z);
  if (z.imag() == 0.0 && (std::abs(d.real()) <= 2.0 || contains(ge.en, z.real()))) return 0.0;
  const cplx w = 0.5 * d;
  const double aw = std::abs(w);
  if (aw > 1e150) return std::max(0.0, (std::numbers::ln2 + std::log(aw)) / ge.n);
  // Of the two branches w +- s take the one outside the unit disk; comparing
  // moduli avoids the cancelled sum when s is close to -w.
  const cplx s = std::exp(0.5 * std::log(w * w - 1.0));
  const cplx v = std::abs(w + s) >= std::abs(w - s) ? w + s : w - s;
  return std::max(0.0, std::log(std::abs(v)) / ge.n);
}

double eq_density(const GreenEn& ge, double x) {
  const double scale = std::max(1.0, std::max(std::abs(ge.en.lower()), std::abs(ge.en.upper())));
  if (!contains(ge.en, x, 1e-12 * scale))
    throw std::invalid_argument("eq_density: x = " + std::to_string(x) + " lies outside the period set");
  const auto [v, dv] = eval_with_derivative(ge.delta, x);
  const double d = v.real();
  const double q = (2.0 - d) * (2.0 + d);
  if (q <= 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(dv.real()) / (std::numbers::pi * ge.n * std::sqrt(q));
}

namespace {

struct Accum {
  double value = 0.0;
  double error = 0.0;
};

// Coefficients of delta(p + h) in powers of h. A constant term within
// rounding of +-2 is snapped, so 2 -+ delta keeps full relative accuracy as
// h -> 0 at band endpoints. At a turning point the same snap uses the
// tolerance of preimage_interval, which already treats such points as touching.
std::vector<double> local_expansion(const GreenEn& ge, double p, bool turning) {
  std::vector<double> d = compose(ge.delta, Polynomial{p, 1.0}).real_coeffs();
  d.resize(static_cast<size_t>(ge.n) + 1, 0.0);
  double scale = 0.0;
  for (auto it = ge.delta.coeffs().rbegin(); it != ge.delta.coeffs().rend(); ++it)
    scale = scale * std::abs(p) + std::abs(*it);
  double tol = 256.0 * std::numeric_limits<double>::epsilon() * scale;
  if (turning) tol = std::max(tol, 4e-10);
  bool snapped = true;
  if (std::abs(d[0] - 2.0) <= tol) d[0] = 2.0;
  else if (std::abs(d[0] + 2.0) <= tol) d[0] = -2.0;
  else snapped = false;
  if (turning && snapped) d[1] = 0.0;
  return d;
}

double local_density(const std::vector<double>& d, double h, int n) {
  double tail = 0.0, slope = 0.0;
  for (size_t k = d.size() - 1; k >= 1; --k) {
    slope = slope * h + static_cast<double>(k) * d[k];
    tail = tail * h + d[k];
  }
  tail *= h;  // delta(p + h) - d0
  const double q = ((2.0 - d[0]) - tail) * ((2.0 + d[0]) + tail);
  if (q <= 0.0) return 0.0;
  return std::abs(slope) / (std::numbers::pi * n * std::sqrt(q));
}

// Adaptive bisection on 31-point Kronrod panels. A panel is accepted once its
// error estimate is below its absolute share or rel_tol of its value.
template <class F>
void adaptive(const F& f, double a, double b, double abs_share, const QuadOptions& opts, unsigned depth,
              Accum& acc) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  // Panels are mapped to [-1, 1] here: the non-adaptive error estimate of
  // gauss_kronrod is not rescaled by the panel half-width.
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double err = 0.0;
  const double v = half * GK::integrate([&](double u) { return f(mid + half * u); }, -1.0, 1.0, 0, 0.0, &err);
  err *= half;
  if (depth == 0 || err <= abs_share || err <= opts.rel_tol * std::abs(v)) {
    acc.value += v;
    acc.error += err;
    return;
  }
  adaptive(f, a, mid, 0.5 * abs_share, opts, depth - 1, acc);
  adaptive(f, mid, b, 0.5 * abs_share, opts, depth - 1, acc);
}

struct Cut {
  double x;
  bool turning;
};

void integrate_piece(const GreenEn& ge, const std::function<double(double)>& f, Cut p, Cut q,
                     const QuadOptions& opts, Accum& acc) {
  if (!(q.x > p.x)) return;
  const double mid = 0.5 * (p.x + q.x);
  const std::vector<double> dl = local_expansion(ge, p.x, p.turning), dr = local_expansion(ge, q.x, q.turning);
  // x = p + s^2 on [p, mid] and x = q - s^2 on [mid, q].
  auto left = [&](double s) { return 2.0 * s * f(p.x + s * s) * local_density(dl, s * s, ge.n); };
  auto right = [&](double s) { return 2.0 * s * f(q.x - s * s) * local_density(dr, -s * s, ge.n); };
  const double share = 0.01 * opts.abs_tol;
  adaptive(left, 0.0, std::sqrt(mid - p.x), share, opts, opts.max_depth, acc);
  adaptive(right, 0.0, std::sqrt(q.x - mid), share, opts, opts.max_depth, acc);
}

// Pieces are cut at breakpoints and at critical points of delta inside the band,
// where delta may touch +-2 without leaving the band.
void integrate_band(const GreenEn& ge, const Band& b, const std::function<double(double)>& f,
                    std::span<const double> breakpoints, const QuadOptions& opts, Accum& acc) {
  std::vector<Cut> cuts{{b.lo, false}};
  for (double x : breakpoints)
    if (x > b.lo && x < b.hi) cuts.push_back({x, false});
  for (double x : real_critical_points(ge.delta))
    if (x > b.lo && x < b.hi) cuts.push_back({x, true});
  std::sort(cuts.begin(), cuts.end(), [](const Cut& u, const Cut& v) { return u.x < v.x; });
  cuts.push_back({b.hi, false});
  for (size_t i = 0; i + 1 < cuts.size(); ++i) integrate_piece(ge, f, cuts[i], cuts[i + 1], opts, acc);
}

}  // namespace

double eq_integrate(const GreenEn& ge, const std::function<double(double)>& f, std::span<const double> breakpoints,
                    const QuadOptions& opts) {
  Accum acc;
  for (const Band& b : ge.en.bands()) integrate_band(ge, b, f, breakpoints, opts, acc);
  if (!(acc.error <= opts.abs_tol))
    throw QuadratureError("eq_integrate: error estimate exceeds tolerance", acc.value, acc.error);
  return acc.value;
}

std::vector<double> band_masses(const GreenEn& ge, const QuadOptions& opts) {
  std::vector<double> out;
  const std::function<double(double)> one = [](double) { return 1.0; };
  for (const Band& b : ge.en.bands()) {
    Accum acc;
    integrate_band(ge, b, one, {}, opts, acc);
    if (!(acc.error <= opts.abs_tol))
      throw QuadratureError("band_masses: error estimate exceeds tolerance", acc.value, acc.error);
    out.push_back(acc.value);
  }
  return out;
}

std::vector<GapCritical> gap_criticals(const GreenEn& ge) {
  const Polynomial d1 = derivative(ge.delta);
  const Polynomial d2 = derivative(d1);
  std::vector<GapCritical> out;
  for (const Gap& g : gaps(ge.en)) {
    auto f = [&](double x) { return d1.eval_real(x); };
    double l = g.left, r = g.right;
    double fl = f(l), fr = f(r);
    // Nudge off the endpoints if delta' happens to vanish there numerically.
    for (int k = 0; k < 8 && (fl == 0.0 || fr == 0.0); ++k) {
      const double eps = (g.right - g.left) * std::pow(10.0, -12 + k);
      l = g.left + eps;
      r = g.right - eps;
      fl = f(l);
      fr = f(r);
    }
    if ((fl < 0.0) == (fr < 0.0)) {
      throw Error("gap_criticals: delta' does not change sign on gap (" + std::to_string(g.left) + ", " +
                  std::to_string(g.right) + ")");
    }
    std::uintmax_t iters = 200;
    auto br = boost::math::tools::toms748_solve(f, l, r, fl, fr, boost::math::tools::eps_tolerance<double>(52), iters);
    double w = 0.5 * (br.first + br.second);
    const double dd = d2.eval_real(w);
    if (dd != 0.0) {
      const double cand = w - f(w) / dd;
      if (cand > g.left && cand < g.right && std::abs(f(cand)) < std::abs(f(w))) w = cand;
    }
    out.push_back({w, green(ge, w), g});
  }
  return out;
}

double pw_sum(const GreenEn& ge) {
  double s = 0.0;
  for (const GapCritical& c : gap_criticals(ge)) s += c.g_value;
  return s;
}

CapacitySequence capacity_upper_sequence(const IntervalUnion& e, int n_max, const ChebyshevOptions& opts) {
  if (n_max < 1) throw std::invalid_argument("capacity_upper_sequence: n_max must be >= 1");
  CapacitySequence seq{{}, std::numeric_limits<double>::infinity(), 0};
  for (int n = 1; n <= n_max; ++n) {
    const ChebyshevSolution sol = solve(e, n, opts);
    const double s = std::pow(sol.t / 2.0, 1.0 / n);
    seq.s.push_back(s);
    if (s < seq.min) {
      seq.min = s;
      seq.argmin = n;
    }
  }
  return seq;
}

}  // namespace cheblab
