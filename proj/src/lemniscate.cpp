#include "cheblab/lemniscate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cheblab/parallel.hpp"

namespace cheblab {

double LemniscateCurve::total_mass() const {
  double s = 0.0;
  for (double m : masses) s += m;
  return s;
}

std::vector<double> critical_values(const Polynomial& P) {
  std::vector<double> out;
  if (P.degree() < 2) return out;
  for (cplx z : roots(derivative(P))) out.push_back(std::abs(P(z)));
  std::sort(out.begin(), out.end());
  return out;
}

double capacity(const LemniscateSet& ls) {
  if (ls.P.degree() < 1) throw std::invalid_argument("capacity: lemniscate polynomial must have degree >= 1");
  return std::pow(ls.alpha / std::abs(ls.P.leading()), 1.0 / ls.P.degree());
}

ChebyshevPair chebyshev_for(const LemniscateSet& ls) {
  if (ls.P.degree() < 1) throw std::invalid_argument("chebyshev_for: lemniscate polynomial must have degree >= 1");
  const cplx c = ls.P.leading();
  Polynomial T = ls.P * (1.0 / c);
  std::vector<cplx> co = T.coeffs();
  co.back() = 1.0;
  return {Polynomial(std::move(co)), ls.alpha / std::abs(c)};
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<cplx> level_roots(const Polynomial& P, double alpha, double theta) {
  std::vector<cplx> c = P.coeffs();
  c[0] -= alpha * std::polar(1.0, theta);
  return roots(Polynomial(std::move(c)));
}

// Nearest-root assignment of branches a to the roots b. Accepted only when it
// is a bijection and every step is below a third of the root separation.
bool try_match(const std::vector<cplx>& a, const std::vector<cplx>& b, std::vector<cplx>& out) {
  const size_t n = a.size();
  if (n == 1) {
    out = b;
    return true;
  }
  double sep = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) sep = std::min(sep, std::abs(b[i] - b[j]));
  std::vector<bool> used(n, false);
  out.assign(n, cplx{});
  for (size_t k = 0; k < n; ++k) {
    size_t best = 0;
    double d1 = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < n; ++j) {
      const double d = std::abs(a[k] - b[j]);
      if (d < d1) {
        d1 = d;
        best = j;
      }
    }
    if (!(d1 < sep / 3.0) || used[best]) return false;
    used[best] = true;
    out[k] = b[best];
  }
  return true;
}

struct Stepper {
  const Polynomial& P;
  double alpha;
  int max_halvings;

  std::vector<cplx> advance(const std::vector<cplx>& a, double th_a, double th_b, const std::vector<cplx>& b,
                            int depth) const {
    std::vector<cplx> out;
    if (try_match(a, b, out)) return out;
    if (depth >= max_halvings)
      throw BranchMatchError("trace: ambiguous branch match near theta = " + std::to_string(th_a) + " after " +
                             std::to_string(max_halvings) + " halvings");
    const double th_m = 0.5 * (th_a + th_b);
    const std::vector<cplx> mid = advance(a, th_a, th_m, level_roots(P, alpha, th_m), depth + 1);
    return advance(mid, th_m, th_b, b, depth + 1);
  }
};

bool in_polygon(const std::vector<CurveSample>& loop, cplx w) {
  bool inside = false;
  const size_t m = loop.size() - 1;  // last sample repeats the first
  for (size_t i = 0, j = m - 1; i < m; j = i++) {
    const cplx a = loop[i].z, b = loop[j].z;
    if ((a.imag() > w.imag()) != (b.imag() > w.imag())) {
      const double x = a.real() + (w.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (w.real() < x) inside = !inside;
    }
  }
  return inside;
}

double distance_to_polygon(const std::vector<CurveSample>& loop, cplx w) {
  double d = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < loop.size(); ++i) {
    const cplx a = loop[i].z, b = loop[i + 1].z;
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    double s = len2 > 0.0 ? ((w - a) * std::conj(ab)).real() / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    d = std::min(d, std::abs(w - (a + s * ab)));
  }
  return d;
}

}  // namespace

LemniscateCurve trace(const LemniscateSet& ls, int m, const TraceOptions& opts) {
  const Polynomial& P = ls.P;
  const int n = P.degree();
  if (n < 1) throw std::invalid_argument("trace: polynomial must have degree >= 1");
  if (!(ls.alpha > 0.0)) throw std::invalid_argument("trace: alpha must be positive");
  if (m < 64 * n) throw std::invalid_argument("trace: need at least 64 samples per degree per turn");

  const std::vector<double> cv = critical_values(P);
  for (double v : cv) {
    if (std::abs(ls.alpha - v) <= opts.crit_tol * ls.alpha)
      throw NearCriticalError("trace: near-critical level, components may merge", cv);
  }

  std::vector<std::vector<cplx>> base(static_cast<size_t>(m));
  parallel_for(base.size(), [&](size_t j) { base[j] = level_roots(P, ls.alpha, kTwoPi * j / m); });
  std::sort(base[0].begin(), base[0].end(),
            [](cplx a, cplx b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); });

  // pos[j][k]: branch k at angle 2 pi j / m; pos[m] closes the turn.
  const Stepper step{P, ls.alpha, opts.max_halvings};
  std::vector<std::vector<cplx>> pos(static_cast<size_t>(m) + 1);
  pos[0] = base[0];
  for (int j = 1; j <= m; ++j) {
    const auto& target = base[static_cast<size_t>(j % m)];
    pos[static_cast<size_t>(j)] = step.advance(pos[static_cast<size_t>(j - 1)], kTwoPi * (j - 1) / m,
                                               kTwoPi * j / m, target, 0);
  }

  // After one turn branch k sits where branch perm[k] started.
  std::vector<size_t> perm(static_cast<size_t>(n));
  for (size_t k = 0; k < perm.size(); ++k) {
    size_t best = 0;
    for (size_t j = 1; j < perm.size(); ++j)
      if (std::abs(pos[m][k] - pos[0][j]) < std::abs(pos[m][k] - pos[0][best])) best = j;
    perm[k] = best;
  }

  LemniscateCurve curve;
  curve.n = n;
  curve.alpha = ls.alpha;
  curve.P = P;
  std::vector<bool> seen(perm.size(), false);
  for (size_t start = 0; start < perm.size(); ++start) {
    if (seen[start]) continue;
    std::vector<size_t> cycle;
    for (size_t k = start; !seen[k]; k = perm[k]) {
      seen[k] = true;
      cycle.push_back(k);
    }
    std::vector<CurveSample> loop;
    for (size_t r = 0; r < cycle.size(); ++r)
      for (int j = 0; j < m; ++j)
        loop.push_back({pos[static_cast<size_t>(j)][cycle[r]], kTwoPi * (static_cast<double>(r) + double(j) / m), 0.0});
    loop.push_back({loop.front().z, kTwoPi * static_cast<double>(cycle.size()), 0.0});
    double mass = 0.0;
    for (size_t i = 0; i + 1 < loop.size(); ++i) {
      const double dtheta = std::arg(P(loop[i + 1].z) / P(loop[i].z));
      loop[i].weight = dtheta / (kTwoPi * n);
      mass += loop[i].weight;
    }
    curve.components.push_back(std::move(loop));
    curve.masses.push_back(mass);
  }

  const std::vector<cplx> zeros = roots(P);
  for (const auto& loop : curve.components) {
    int k = 0;
    for (cplx z : zeros)
      if (in_polygon(loop, z)) ++k;
    curve.enclosed_roots.push_back(k);
  }
  return curve;
}

Location locate(const LemniscateCurve& curve, cplx w, double tol) {
  bool inside = false;
  for (const auto& loop : curve.components) {
    if (distance_to_polygon(loop, w) <= tol) return Location::on_curve;
    if (in_polygon(loop, w)) inside = true;
  }
  return inside ? Location::inside : Location::outside;
}

double potential_at(const LemniscateCurve& curve, cplx w) {
  if (locate(curve, w) != Location::outside)
    throw std::invalid_argument("potential_at: point lies inside or on a traced component");
  double s = 0.0;
  for (const auto& loop : curve.components)
    for (const CurveSample& c : loop) s += c.weight * std::log(std::abs(c.z - w));
  return s;
}

Membership disk_membership(cplx center, double radius) {
  return {"disk", [=](cplx z, double tol) { return std::abs(z - center) <= radius + tol; }};
}

Membership circle_membership(cplx center, double radius) {
  return {"circle", [=](cplx z, double tol) { return std::abs(std::abs(z - center) - radius) <= tol; }};
}

Membership interval_union_membership(const IntervalUnion& e) {
  return {"interval_union", [=](cplx z, double tol) { return std::abs(z.imag()) <= tol && contains(e, z.real(), tol); }};
}

Membership lemniscate_membership(const LemniscateSet& ls) {
  return {"lemniscate",
          [=](cplx z, double tol) { return std::abs(ls.P(z)) <= ls.alpha + tol * std::max(1.0, ls.alpha); }};
}

ComplexSaturation saturation_complex(const Membership& e, const Polynomial& T, double t, int m, double tol) {
  const LemniscateSet ls{T, t};
  const LemniscateCurve curve = trace(ls, std::max(m, 64 * T.degree()));
  ComplexSaturation out;
  for (const auto& loop : curve.components) {
    for (size_t i = 0; i + 1 < loop.size(); ++i) {
      ++out.samples;
      if (e.contains(loop[i].z, tol)) ++out.inside;
    }
  }
  out.fraction = static_cast<double>(out.inside) / static_cast<double>(out.samples);
  out.saturated = out.inside == out.samples;
  out.norm_ratio = t / std::pow(capacity(ls), T.degree());
  return out;
}

}  // namespace cheblab
