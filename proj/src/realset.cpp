#include "cheblab/realset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <boost/math/tools/toms748_solve.hpp>

namespace cheblab {

IntervalUnion::IntervalUnion(std::vector<Band> bands, double merge_tol) {
  if (bands.empty()) throw std::invalid_argument("IntervalUnion: at least one band is required");
  for (const Band& b : bands) {
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo > b.hi)
      throw std::invalid_argument("IntervalUnion: band endpoints must be finite with lo <= hi");
  }
  std::sort(bands.begin(), bands.end(), [](const Band& a, const Band& b) { return a.lo < b.lo; });
  for (const Band& b : bands) {
    if (!bands_.empty() && b.lo - bands_.back().hi <= merge_tol) bands_.back().hi = std::max(bands_.back().hi, b.hi);
    else bands_.push_back(b);
  }
  if (!(total_length() > 0.0)) throw std::invalid_argument("IntervalUnion: total length must be positive");
}

double IntervalUnion::total_length() const noexcept {
  double s = 0.0;
  for (const Band& b : bands_) s += b.length();
  return s;
}

IntervalUnion IntervalUnion::affine(double scale, double shift) const {
  if (scale == 0.0) throw std::invalid_argument("IntervalUnion::affine: zero scale");
  std::vector<Band> out;
  out.reserve(bands_.size());
  for (const Band& b : bands_) {
    double lo = scale * b.lo + shift, hi = scale * b.hi + shift;
    if (lo > hi) std::swap(lo, hi);
    out.push_back({lo, hi});
  }
  return IntervalUnion(std::move(out));
}

std::vector<Gap> gaps(const IntervalUnion& e) {
  std::vector<Gap> out;
  const auto& b = e.bands();
  for (size_t i = 0; i + 1 < b.size(); ++i) out.push_back({b[i].hi, b[i + 1].lo});
  return out;
}

double distance_to(const IntervalUnion& e, double x) noexcept {
  double d = std::numeric_limits<double>::infinity();
  for (const Band& b : e.bands()) {
    if (x < b.lo) d = std::min(d, b.lo - x);
    else if (x > b.hi) d = std::min(d, x - b.hi);
    else return 0.0;
  }
  return d;
}

namespace {

// sup over x in e of dist(x, f). The distance to f restricted to a band of e
// is piecewise linear with maxima at band endpoints or at midpoints of gaps of f.
double directed_distance(const IntervalUnion& e, const IntervalUnion& f) {
  double d = 0.0;
  for (const Band& b : e.bands()) d = std::max({d, distance_to(f, b.lo), distance_to(f, b.hi)});
  for (const Gap& g : gaps(f)) {
    const double mid = 0.5 * (g.left + g.right);
    if (contains(e, mid)) d = std::max(d, distance_to(f, mid));
  }
  return d;
}

}  // namespace

double set_distance(const IntervalUnion& e, const IntervalUnion& f) {
  return std::max(directed_distance(e, f), directed_distance(f, e));
}

bool contains(const IntervalUnion& e, double x, double tol) noexcept { return distance_to(e, x) <= tol; }

IntervalUnion parse_interval_union(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  std::vector<Band> bands;
  size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("cannot parse interval union \"" + std::string(text) + "\": " + why);
  };
  auto number = [&](char terminator) {
    const size_t end = s.find(terminator, pos);
    if (end == std::string::npos) fail(std::string("expected '") + terminator + "'");
    const std::string tok = s.substr(pos, end - pos);
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      fail("bad number '" + tok + "'");
    }
    if (used != tok.size()) fail("bad number '" + tok + "'");
    pos = end + 1;
    return v;
  };
  while (pos < s.size()) {
    if (!bands.empty()) {
      if (s[pos] != 'u' && s[pos] != 'U') fail("expected 'u' between bands");
      ++pos;
    }
    if (pos >= s.size() || s[pos] != '[') fail("expected '['");
    ++pos;
    const double a = number(',');
    const double b = number(']');
    bands.push_back({a, b});
  }
  if (bands.empty()) fail("no bands");
  return IntervalUnion(std::move(bands));
}

std::string to_text(const IntervalUnion& e) {
  std::string out;
  char buf[64];
  for (const Band& b : e.bands()) {
    if (!out.empty()) out += "u";
    std::snprintf(buf, sizeof buf, "[%.17g,%.17g]", b.lo, b.hi);
    out += buf;
  }
  return out;
}

namespace {

// Root of f on [u, v] given that f(u) and f(v) have opposite signs.
template <class F>
double bracketed_root(F f, double u, double v) {
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(f, u, v, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

PreimageResult preimage_interval_detailed(const Polynomial& p, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("preimage_interval: requires lo < hi");
  if (!p.is_real(1e-12)) throw std::invalid_argument("preimage_interval: polynomial must have real coefficients");
  const int n = p.degree();
  if (n == 0) {
    const double c = p.is_zero() ? 0.0 : p.coeff(0).real();
    if (lo <= c && c <= hi) throw PreimageError(PreimageError::Reason::unbounded, "preimage_interval: constant polynomial, preimage is all of R");
    throw PreimageError(PreimageError::Reason::empty, "preimage_interval: constant polynomial, preimage is empty");
  }

  const std::vector<double> c = p.real_coeffs();
  const double lead = c.back();
  // Cauchy bound for the roots of p - lo and p - hi; also encloses the critical points.
  double bound = 0.0;
  for (int i = 0; i < n; ++i) {
    double ci = std::abs(c[static_cast<size_t>(i)]);
    if (i == 0) ci = std::max(std::abs(c[0] - lo), std::abs(c[0] - hi));
    bound = std::max(bound, ci / std::abs(lead));
  }
  bound = 1.0 + bound;

  std::vector<double> knots{-bound};
  for (double x : real_critical_points(p))
    if (x > -bound && x < bound) knots.push_back(x);
  knots.push_back(bound);

  auto scale_at = [&](double x) {
    double s = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * std::abs(x) + std::abs(*it);
    return s;
  };
  // Critical values within rounding of a level are snapped onto it, so that a
  // band touching the level at a turning point stays one band.
  std::vector<double> vals(knots.size());
  for (size_t i = 0; i < knots.size(); ++i) {
    double v = p.eval_real(knots[i]);
    const double vtol = std::max(1e-10 * (hi - lo), 64.0 * std::numeric_limits<double>::epsilon() * scale_at(knots[i]));
    if (i > 0 && i + 1 < knots.size()) {
      if (std::abs(v - hi) <= vtol) v = hi;
      else if (std::abs(v - lo) <= vtol) v = lo;
    }
    vals[i] = v;
  }

  auto f = [&](double level) { return [&p, level](double x) { return p.eval_real(x) - level; }; };
  auto crossing = [&](size_t i, double level) {
    const double u = knots[i], v = knots[i + 1];
    if (vals[i] == level) return u;
    if (vals[i + 1] == level) return v;
    return bracketed_root(f(level), u, v);
  };

  std::vector<Band> pieces;
  for (size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = vals[i], b = vals[i + 1];
    const double vmin = std::min(a, b), vmax = std::max(a, b);
    if (vmax < lo || vmin > hi) continue;
    const bool increasing = b >= a;
    // Parameter range on this monotone piece where the value is in [lo, hi].
    double x_lo = vmin >= lo ? (increasing ? knots[i] : knots[i + 1]) : crossing(i, lo);
    double x_hi = vmax <= hi ? (increasing ? knots[i + 1] : knots[i]) : crossing(i, hi);
    if (x_lo > x_hi) std::swap(x_lo, x_hi);
    pieces.push_back({x_lo, x_hi});
  }

  // Merge pieces sharing a turning point, then separate zero-length leftovers.
  std::sort(pieces.begin(), pieces.end(), [](const Band& a, const Band& b) { return a.lo < b.lo; });
  std::vector<Band> merged;
  for (const Band& b : pieces) {
    if (!merged.empty() && b.lo - merged.back().hi <= kMergeTol) merged.back().hi = std::max(merged.back().hi, b.hi);
    else merged.push_back(b);
  }
  std::vector<Band> bands;
  std::vector<double> isolated;
  for (const Band& b : merged) {
    if (b.hi - b.lo > kMergeTol) bands.push_back(b);
    else isolated.push_back(0.5 * (b.lo + b.hi));
  }
  if (bands.empty()) throw PreimageError(PreimageError::Reason::empty, "preimage_interval: preimage has no bands");
  return {IntervalUnion(std::move(bands)), std::move(isolated)};
}

IntervalUnion preimage_interval(const Polynomial& p, double lo, double hi) {
  return preimage_interval_detailed(p, lo, hi).set;
}

}  // namespace cheblab
