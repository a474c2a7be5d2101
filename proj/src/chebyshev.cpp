#include "cheblab/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <boost/math/tools/toms748_solve.hpp>

namespace cheblab {

namespace {

// Work happens in u = (x - mid) / half, which maps the hull of E onto [-1, 1].
// There the candidate is p(u) = T_n(u) + sum_{k<n} a_k T_k(u) and the monic
// polynomial in x is K p(u) with K = half^n 2^{1-n}.
struct HullMap {
  double mid;
  double half;
  double to_u(double x) const { return (x - mid) / half; }
  double to_x(double u) const { return mid + half * u; }
};

// Clenshaw summation of sum_k a_k T_k(u).
double clenshaw(const std::vector<double>& a, double u) {
  double b1 = 0.0, b2 = 0.0;
  for (size_t k = a.size(); k-- > 1;) {
    const double b0 = 2.0 * u * b1 - b2 + a[k];
    b2 = b1;
    b1 = b0;
  }
  return u * b1 - b2 + a[0];
}

std::vector<double> cheb_derivative(const std::vector<double>& a) {
  const size_t n = a.size() - 1;
  if (n == 0) return {0.0};
  std::vector<double> d(n + 1, 0.0);
  for (size_t k = n; k-- > 0;) d[k] = (k + 2 <= n ? d[k + 2] : 0.0) + 2.0 * static_cast<double>(k + 1) * a[k + 1];
  d[0] *= 0.5;
  d.pop_back();
  return d;
}

struct ReferenceFit {
  std::vector<double> a;  // size n + 1, a[n] = 1
  double h;
};

// Solves p(u_i) = (-1)^i h on the reference.
ReferenceFit fit_reference(const std::vector<double>& ref, int n) {
  const int m = n + 1;
  Eigen::MatrixXd A(m, m);
  Eigen::VectorXd rhs(m);
  std::vector<double> tv(static_cast<size_t>(n) + 1);
  for (int i = 0; i < m; ++i) {
    const double u = ref[static_cast<size_t>(i)];
    tv[0] = 1.0;
    if (n >= 1) tv[1] = u;
    for (int k = 2; k <= n; ++k) tv[static_cast<size_t>(k)] = 2.0 * u * tv[static_cast<size_t>(k) - 1] - tv[static_cast<size_t>(k) - 2];
    for (int k = 0; k < n; ++k) A(i, k) = tv[static_cast<size_t>(k)];
    A(i, n) = (i % 2 == 0) ? -1.0 : 1.0;
    rhs(i) = -tv[static_cast<size_t>(n)];
  }
  const Eigen::VectorXd sol = A.partialPivLu().solve(rhs);
  ReferenceFit fit;
  fit.a.assign(static_cast<size_t>(n) + 1, 0.0);
  for (int k = 0; k < n; ++k) fit.a[static_cast<size_t>(k)] = sol(k);
  fit.a[static_cast<size_t>(n)] = 1.0;
  fit.h = sol(n);
  return fit;
}

// Picks `count` alternating points from residuals r at sorted abscissae.
// Returns indices into r, or an empty vector when no alternant of that size exists.
std::vector<size_t> select_reference(const std::vector<double>& r, double h, int count) {
  std::vector<size_t> runs;
  for (size_t i = 0; i < r.size(); ++i) {
    if (r[i] == 0.0) continue;
    if (!runs.empty() && std::signbit(r[runs.back()]) == std::signbit(r[i])) {
      if (std::abs(r[i]) > std::abs(r[runs.back()])) runs.back() = i;
    } else {
      runs.push_back(i);
    }
  }

  const double floor = std::abs(h) * (1.0 - 1e-12);
  std::vector<size_t> kept;
  for (size_t i : runs) {
    if (std::abs(r[i]) < floor) continue;
    if (!kept.empty() && std::signbit(r[kept.back()]) == std::signbit(r[i])) {
      if (std::abs(r[i]) > std::abs(r[kept.back()])) kept.back() = i;
    } else {
      kept.push_back(i);
    }
  }
  const std::vector<size_t>& alt = kept.size() >= static_cast<size_t>(count) ? kept : runs;
  if (alt.size() < static_cast<size_t>(count)) return {};

  size_t g = 0;
  for (size_t i = 1; i < alt.size(); ++i)
    if (std::abs(r[alt[i]]) > std::abs(r[alt[g]])) g = i;
  const size_t c = static_cast<size_t>(count);
  const size_t first = g + 1 >= c ? g + 1 - c : 0;
  const size_t last = std::min(g, alt.size() - c);
  size_t best = first;
  double best_min = -1.0;
  for (size_t s = first; s <= last; ++s) {
    double mn = std::numeric_limits<double>::infinity();
    for (size_t j = s; j < s + c; ++j) mn = std::min(mn, std::abs(r[alt[j]]));
    if (mn > best_min) {
      best_min = mn;
      best = s;
    }
  }
  return {alt.begin() + static_cast<std::ptrdiff_t>(best), alt.begin() + static_cast<std::ptrdiff_t>(best + c)};
}

// Chebyshev-Lobatto points on each band, in u coordinates, band by band.
std::vector<std::vector<double>> band_grids(const IntervalUnion& e, const HullMap& map, int m) {
  std::vector<std::vector<double>> out;
  for (const Band& b : e.bands()) {
    const double lo = map.to_u(b.lo), hi = map.to_u(b.hi);
    std::vector<double> g;
    if (hi <= lo) {
      g.push_back(lo);
    } else {
      g.resize(static_cast<size_t>(m));
      for (int j = 0; j < m; ++j)
        g[static_cast<size_t>(j)] = lo + (hi - lo) * 0.5 * (1.0 - std::cos(std::numbers::pi * j / (m - 1)));
      g.front() = lo;
      g.back() = hi;
    }
    out.push_back(std::move(g));
  }
  return out;
}

Polynomial to_monomial(const std::vector<double>& a, const HullMap& map) {
  const int n = static_cast<int>(a.size()) - 1;
  // Monomial form in u via T_{k+1} = 2u T_k - T_{k-1}.
  Polynomial tkm1{1.0}, tk{0.0, 1.0};
  Polynomial pu = Polynomial{a[0]};
  if (n >= 1) pu += tk * a[1];
  const Polynomial two_u{0.0, 2.0};
  for (int k = 1; k < n; ++k) {
    Polynomial next = two_u * tk - tkm1;
    tkm1 = std::move(tk);
    tk = std::move(next);
    pu += tk * a[static_cast<size_t>(k) + 1];
  }
  const Polynomial inner{-map.mid / map.half, 1.0 / map.half};
  const double K = std::pow(map.half, n) * std::pow(2.0, 1 - n);
  std::vector<cplx> c = (compose(pu, inner) * K).coeffs();
  for (cplx& v : c) v = v.real();
  c.resize(static_cast<size_t>(n) + 1, 0.0);
  c.back() = 1.0;
  return Polynomial(std::move(c));
}

// Empty when the grid has to be refined.
using Attempt = std::optional<ChebyshevSolution>;

Attempt solve_with_grid(const IntervalUnion& e, int n, int m, bool may_regrid, const ChebyshevOptions& opts) {
  const HullMap map{0.5 * (e.lower() + e.upper()), 0.5 * (e.upper() - e.lower())};
  const double tol = std::max(opts.certificate_tol, 1e-12);
  const int count = n + 1;

  const auto grids = band_grids(e, map, m);
  std::vector<double> grid;
  for (const auto& g : grids) grid.insert(grid.end(), g.begin(), g.end());
  if (grid.size() < static_cast<size_t>(count))
    throw std::invalid_argument("chebyshev::solve: degree " + std::to_string(n) +
                                " needs more grid points; increase grid_per_band");

  // Discrete phase: ascent exchange over the grid.
  std::vector<size_t> ref_idx(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k)
    ref_idx[static_cast<size_t>(k)] =
        static_cast<size_t>(std::llround(static_cast<double>(k) * static_cast<double>(grid.size() - 1) / n));

  auto gather = [&](const std::vector<size_t>& idx) {
    std::vector<double> u(idx.size());
    for (size_t i = 0; i < idx.size(); ++i) u[i] = grid[idx[i]];
    return u;
  };

  ReferenceFit fit = fit_reference(gather(ref_idx), n);
  std::vector<double> r(grid.size());
  for (int iter = 0; iter < opts.max_iters * 4; ++iter) {
    for (size_t i = 0; i < grid.size(); ++i) r[i] = clenshaw(fit.a, grid[i]);
    double gmax = 0.0;
    for (double v : r) gmax = std::max(gmax, std::abs(v));
    if (gmax <= std::abs(fit.h) * (1.0 + 1e-14)) break;
    std::vector<size_t> next = select_reference(r, fit.h, count);
    if (next.empty() || next == ref_idx) break;
    ref_idx = std::move(next);
    fit = fit_reference(gather(ref_idx), n);
  }
  const std::vector<double> discrete_ref = gather(ref_idx);

  // Continuum phase: candidates are grid points, band endpoints, interior
  // critical points of p and the current reference.
  std::vector<double> ref = discrete_ref;
  double lower_u = 0.0, upper_u = 0.0;
  std::vector<double> cand, rc;
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    const std::vector<double> da = cheb_derivative(fit.a);
    cand = grid;
    for (const auto& g : grids) {
      for (size_t j = 0; j + 1 < g.size(); ++j) {
        const double d0 = clenshaw(da, g[j]), d1 = clenshaw(da, g[j + 1]);
        if (d0 == 0.0) {
          cand.push_back(g[j]);
        } else if ((d0 < 0.0) != (d1 < 0.0) && d1 != 0.0) {
          std::uintmax_t it = 100;
          auto br = boost::math::tools::toms748_solve([&](double u) { return clenshaw(da, u); }, g[j], g[j + 1], d0, d1,
                                                      boost::math::tools::eps_tolerance<double>(52), it);
          const double u0 = br.first, u1 = br.second;
          cand.push_back(std::abs(clenshaw(fit.a, u0)) >= std::abs(clenshaw(fit.a, u1)) ? u0 : u1);
        }
      }
    }
    cand.insert(cand.end(), ref.begin(), ref.end());
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    rc.resize(cand.size());
    upper_u = 0.0;
    for (size_t i = 0; i < cand.size(); ++i) {
      rc[i] = clenshaw(fit.a, cand[i]);
      upper_u = std::max(upper_u, std::abs(rc[i]));
    }
    lower_u = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < ref.size(); ++i) {
      const double v = clenshaw(fit.a, ref[i]);
      if (i > 0 && std::signbit(v) == std::signbit(clenshaw(fit.a, ref[i - 1]))) {
        lower_u = 0.0;
        break;
      }
      lower_u = std::min(lower_u, std::abs(v));
    }
    if (upper_u - lower_u <= tol * upper_u) break;

    const std::vector<size_t> sel = select_reference(rc, fit.h, count);
    std::vector<double> next;
    for (size_t i : sel) next.push_back(cand[i]);
    if (next.empty() || next == ref) {
      lower_u = std::min(lower_u, upper_u);
      break;
    }
    if (iter == 0 && may_regrid) {
      // A refined point that left its grid cell means the grid under-resolved T.
      for (size_t i = 0; i < next.size(); ++i) {
        double cell = std::numeric_limits<double>::infinity();
        for (const auto& g : grids)
          for (size_t j = 0; j + 1 < g.size(); ++j)
            if (g[j] <= discrete_ref[i] && discrete_ref[i] <= g[j + 1]) cell = std::min(cell, g[j + 1] - g[j]);
        if (std::isfinite(cell) && std::abs(next[i] - discrete_ref[i]) > cell) return std::nullopt;
      }
    }
    ref = std::move(next);
    fit = fit_reference(ref, n);
  }

  const double K = std::pow(map.half, n) * std::pow(2.0, 1 - n);
  if (!(upper_u - lower_u <= tol * upper_u)) {
    throw ChebyshevConvergenceError("chebyshev::solve: enclosure did not close within max_iters (degree " +
                                        std::to_string(n) + ")",
                                    K * lower_u, K * upper_u);
  }

  ChebyshevSolution sol{.T = to_monomial(fit.a, map), .t = K * upper_u, .extrema = {}, .lower_bound = K * lower_u,
                        .E = e, .n = n, .reference = {}};
  for (size_t i = 0; i < cand.size(); ++i) {
    if (std::abs(rc[i]) < upper_u * (1.0 - 1e-9)) continue;
    const double x = std::clamp(map.to_x(cand[i]), e.lower(), e.upper());
    if (!sol.extrema.empty() && std::abs(x - sol.extrema.back().x) <= 1e-12 * map.half) continue;
    sol.extrema.push_back({x, rc[i] > 0.0 ? 1 : -1});
  }
  for (double u : ref) sol.reference.push_back(std::clamp(map.to_x(u), e.lower(), e.upper()));
  return sol;
}

}  // namespace

ChebyshevSolution solve(const IntervalUnion& e, int n, const ChebyshevOptions& opts) {
  if (n < 1) throw std::invalid_argument("chebyshev::solve: degree must be >= 1");
  const int m = opts.grid_per_band > 0 ? opts.grid_per_band : std::max(64, 16 * n);
  Attempt a = solve_with_grid(e, n, m, true, opts);
  if (!a) a = solve_with_grid(e, n, 2 * m, false, opts);
  return std::move(*a);
}

IntervalUnion en_set(const ChebyshevSolution& sol) { return preimage_interval(sol.T, -sol.t, sol.t); }

Polynomial delta(const ChebyshevSolution& sol) { return sol.T * (2.0 / sol.t); }

}  // namespace cheblab
