#include "cheblab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cheblab/chebyshev.hpp"
#include "cheblab/fixtures.hpp"
#include "cheblab/json_io.hpp"
#include "cheblab/lemniscate.hpp"
#include "cheblab/potential.hpp"
#include "cheblab/widom.hpp"

namespace cheblab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Tracks the worst instance of a check.
struct Worst {
  double margin = kInf;
  std::string where;

  void update(double m, const std::string& label) {
    if (m < margin || std::isnan(m)) {
      margin = m;
      where = label;
    }
  }
  bool ok() const { return margin > 0.0; }
};

std::string label(const std::string& name, int n) { return name + " n=" + std::to_string(n); }

CheckResult classical_interval() {
  const auto t0 = std::chrono::steady_clock::now();
  const IntervalUnion e = IntervalUnion::interval(-1.0, 1.0);
  Worst w;
  for (int n = 1; n <= 12; ++n) {
    const double exact = std::ldexp(1.0, 1 - n);
    w.update(1e-8 - std::abs(solve(e, n).t - exact) / exact, label("[-1,1]", n));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CheckResult r{1, check_name(1), w.ok() && secs < 5.0, w.margin, "worst " + w.where, 0.0};
  if (secs >= 5.0) r.detail += "; over the 5 s budget";
  return r;
}

CheckResult schiefermayr_floor() {
  Worst w;
  int count = 0;
  for (const RealFixture& f : real_fixtures()) {
    for (int n = 1; n <= 10; ++n) {
      const WidomReport rep = widom_factor(f.set, n);
      w.update(rep.W - (2.0 - 1e-9), label(f.name, n));
      ++count;
    }
  }
  return {2, check_name(2), w.ok(), w.margin, std::to_string(count) + " reports; worst " + w.where, 0.0};
}

// max_i |a_i / lead(a) - b_i / lead(b)|
double normalized_distance(const Polynomial& a, const Polynomial& b) {
  if (a.degree() != b.degree()) return kInf;
  double d = 0.0;
  for (int i = 0; i <= a.degree(); ++i) d = std::max(d, std::abs(a.coeff(i) / a.leading() - b.coeff(i) / b.leading()));
  return d;
}

CheckResult saturation_biconditional() {
  const auto t0 = std::chrono::steady_clock::now();
  Worst w;
  int pos = 0, neg = 0;
  for (const RealFixture& f : preimage_fixtures()) {
    const int n = f.period();
    if (n < 2 || n > 4) continue;
    const RealSaturation s = saturation_real(f.set, n);
    const std::string at = label(f.name, n);
    w.update(s.saturated ? 1e-6 - normalized_distance(s.witness, *f.defining) : -kInf, at);
    w.update(1e-6 - std::abs(s.W - 2.0), at);
    ++pos;
  }
  for (const RealFixture& f : non_preimage_fixtures()) {
    const RealSaturation s = saturation_real(f.set, 2);
    const std::string at = label(f.name, 2);
    w.update(s.saturated ? -kInf : s.W - 2.0 - 1e-4, at);
    ++neg;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CheckResult r{3, check_name(3), w.ok() && secs < 60.0, w.margin,
                std::to_string(pos) + " preimage and " + std::to_string(neg) + " other sets; worst " + w.where, 0.0};
  if (secs >= 60.0) r.detail += "; over the 60 s budget";
  return r;
}

CheckResult multiples() {
  Worst w;
  for (const RealFixture& f : preimage_fixtures()) {
    const int n = f.period();
    const int k_max = std::min(4, 16 / n);
    for (const auto& [k, W] : multiples_check(f.set, n, k_max)) w.update(1e-6 - std::abs(W - 2.0), label(f.name, n * k));
  }
  return {4, check_name(4), w.ok(), w.margin, "worst " + w.where, 0.0};
}

CheckResult equilibrium_measure() {
  Worst w;
  std::vector<std::pair<std::string, GreenEn>> sets;
  for (const RealFixture& f : preimage_fixtures()) sets.emplace_back(f.name, GreenEn::from_delta(*f.defining));
  for (const RealFixture& f : non_preimage_fixtures())
    for (int n : {3, 6}) sets.emplace_back(label("e_n of " + f.name, n), GreenEn::from_solution(solve(f.set, n)));
  for (const auto& [name, ge] : sets)
    w.update(1e-9 - std::abs(eq_integrate(ge, [](double) { return 1.0; }) - 1.0), name);

  const GreenEn arcsine = GreenEn::from_delta(Polynomial{0.0, 2.0});
  w.update(1e-7 - std::abs(eq_density(arcsine, 0.0) - 1.0 / std::numbers::pi), "arcsine x=0");
  w.update(1e-7 - std::abs(eq_density(arcsine, 0.6) - 1.0 / (0.8 * std::numbers::pi)), "arcsine x=0.6");
  return {5, check_name(5), w.ok(), w.margin,
          std::to_string(sets.size()) + " sets plus arcsine spot values; worst " + w.where, 0.0};
}

CheckResult lemniscate_suite(unsigned seed) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi), radius(1.3, 3.0);
  Worst w;
  const std::vector<LemniscateSet> cases = {{Polynomial{-1.0, 0.0, 1.0}, 0.25}, {Polynomial{0.0, -1.0, 0.0, 1.0}, 0.2}};
  for (const LemniscateSet& ls : cases) {
    const std::string name = "deg " + std::to_string(ls.P.degree());
    const int n = ls.P.degree();
    const LemniscateCurve c = trace(ls, 4096);
    w.update(1e-8 - std::abs(c.total_mass() - 1.0), name + " total mass");
    for (double m : c.masses) w.update(1e-6 - std::abs(m * n - std::round(m * n)) / n, name + " component mass");
    int tested = 0;
    while (tested < 20) {
      const cplx z = std::polar(radius(rng), angle(rng));
      if (locate(c, z) != Location::outside) continue;
      const double oracle = std::log(std::abs(ls.P(z)) / std::abs(ls.P.leading())) / n;
      w.update(1e-6 - std::abs(potential_at(c, z) - oracle), name + " potential");
      ++tested;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CheckResult r{6, check_name(6), w.ok() && secs < 30.0, w.margin, "worst " + w.where, 0.0};
  if (secs >= 30.0) r.detail += "; over the 30 s budget";
  return r;
}

CheckResult totik_widom() {
  Worst upper, strict;
  for (const RealFixture& f : preimage_fixtures()) {
    const bool gapped = f.set.size() > 1;
    for (int n = 1; n <= 10; ++n) {
      const WidomReport rep = widom_factor(f.set, n, CapacityMode::exact);
      const std::string at = label(f.name, n);
      const double bound = 2.0 * std::exp(*rep.pw);
      upper.update(std::min(rep.W - (2.0 - 1e-9), bound + 1e-6 - rep.W), at);
      if (gapped) strict.update(bound - rep.W - 1e-4, at);
    }
  }
  const bool ok = upper.ok() && strict.ok();
  std::string detail = "bound margin " + fmt("%.3g", upper.margin) + " at " + upper.where + "; strictness margin " +
                       fmt("%.3g", strict.margin) + " at " + strict.where;
  return {7, check_name(7), ok, std::min(upper.margin, strict.margin), detail, 0.0};
}

CheckResult norm_identity() {
  Worst w;
  for (const RealFixture& f : preimage_fixtures()) {
    const GreenEn ge = GreenEn::from_delta(*f.defining);
    for (int n = 1; n <= 10; ++n) w.update(1e-6 - identity_3a5_check(ge, f.set, n).residual, label(f.name, n));
  }
  return {8, check_name(8), w.ok(), w.margin, "worst " + w.where, 0.0};
}

CheckResult two_band() {
  const TwoBandResult r = two_band_experiment(0.5, 1.0, 12);
  double even_margin = kInf;
  for (const TwoBandRow& row : r.rows)
    if (!row.odd) even_margin = std::min(even_margin, 1e-6 - std::abs(row.W - 2.0));
  const TwoBandRow& last = r.rows.back().odd ? r.rows.back() : r.rows[r.rows.size() - 2];
  const bool ok = r.even_saturated && r.odd_in_range && r.odd_increasing && r.trend;
  std::string detail = "limit " + fmt("%.10g", r.limit) + ", final odd gap " + fmt("%.3g", last.gap) + " at n=" +
                       std::to_string(last.n);
  if (!r.odd_in_range) detail += "; odd W outside (2, limit]";
  if (!r.odd_increasing) detail += "; odd W not increasing";
  if (!r.trend) detail += "; gap did not shrink";
  return {9, check_name(9), ok, even_margin, detail, 0.0};
}

CheckResult transfer() {
  const auto t0 = std::chrono::steady_clock::now();
  Worst w;
  const std::vector<std::pair<IntervalUnion, Polynomial>> cases = {
      {IntervalUnion::interval(0.0, 1.0), Polynomial{0.0, 0.0, 1.0}},
      {IntervalUnion::interval(-1.0, 1.0), Polynomial{-2.0, 0.0, 1.0}}};
  for (const auto& [e, P] : cases) {
    for (int n = 1; n <= 5; ++n) {
      const TransferReport r = preimage_transfer(e, P, n);
      const std::string at = label(to_text(e), n);
      w.update(1e-6 - r.coeff_deviation, at + " coefficients");
      w.update(1e-6 - r.t_deviation, at + " norm");
      w.update(1e-8 - r.W_deviation, at + " Widom factor");
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CheckResult r{10, check_name(10), w.ok() && secs < 60.0, w.margin, "worst " + w.where, 0.0};
  if (secs >= 60.0) r.detail += "; over the 60 s budget";
  return r;
}

Polynomial random_poly(std::mt19937_64& rng, int degree, bool monic) {
  std::normal_distribution<double> g;
  std::vector<cplx> c(static_cast<size_t>(degree) + 1);
  for (cplx& x : c) x = {g(rng), g(rng)};
  if (monic) c.back() = 1.0;
  return Polynomial(std::move(c));
}

CheckResult averaging(unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dq(0, 9), dp(1, 3);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Worst w;
  for (int trial = 0; trial < 100; ++trial) {
    const std::string at = "pair " + std::to_string(trial);
    const Polynomial p = random_poly(rng, dp(rng), false);
    const Polynomial q = random_poly(rng, dq(rng), false);
    const AverageResult a = average_over(q, p, seed + static_cast<unsigned>(trial));
    if (a.q_hat.degree() > q.degree() / p.degree()) w.update(-kInf, at + " degree");
    for (int i = 0; i < 50; ++i) {
      const cplx z{unit(rng), unit(rng)};
      const cplx sigma = fiber_average(q, p, z);
      const cplx v = p(z);
      // Rounding q_hat's coefficients alone perturbs q_hat(v) by eps * sum |c_j| |v|^j.
      double scale = 0.0;
      for (int j = a.q_hat.degree(); j >= 0; --j) scale = scale * std::abs(v) + std::abs(a.q_hat.coeff(j));
      w.update(1e-8 - std::abs(sigma - a.q_hat(v)) / std::max(1.0, scale), at);
    }

    // Monic q of degree nk over monic p of degree k averages to a monic degree-n q_hat.
    const int k = p.degree(), n = 1 + trial % 3;
    const Polynomial pm = random_poly(rng, k, true);
    const Polynomial qm = random_poly(rng, n * k, true);
    const AverageResult am = average_over(qm, pm, seed + static_cast<unsigned>(trial));
    if (am.q_hat.degree() != n) w.update(-kInf, at + " monic degree");
    w.update(1e-12 - std::abs(am.q_hat.leading() - 1.0), at + " monic lead");
  }
  return {11, check_name(11), w.ok(), w.margin, "100 random pairs; worst " + w.where, 0.0};
}

}  // namespace

std::string check_name(int id) {
  static const char* names[kCheckCount] = {
      "classical interval norms",  "Schiefermayr floor",     "saturation biconditional",
      "saturated multiples",       "equilibrium measure",    "lemniscate suite",
      "Totik-Widom upper bound",   "norm identity",          "two-band experiment",
      "preimage invariance",       "averaging over fibers"};
  if (id < 1 || id > kCheckCount) throw std::invalid_argument("unknown check id " + std::to_string(id));
  return names[id - 1];
}

std::vector<int> parse_suite(const std::string& spec) {
  std::vector<int> ids;
  if (spec == "all") {
    for (int i = 1; i <= kCheckCount; ++i) ids.push_back(i);
    return ids;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    int id = 0;
    try {
      id = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || id < 1 || id > kCheckCount)
      throw std::invalid_argument("suite must be \"all\" or ids 1.." + std::to_string(kCheckCount) + ", got \"" +
                                  spec + "\"");
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
  }
  if (ids.empty()) throw std::invalid_argument("empty suite");
  return ids;
}

std::vector<CheckResult> run_suite(const std::vector<int>& ids, unsigned seed) {
  std::vector<CheckResult> out;
  for (int id : ids) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      switch (id) {
        case 1: r = classical_interval(); break;
        case 2: r = schiefermayr_floor(); break;
        case 3: r = saturation_biconditional(); break;
        case 4: r = multiples(); break;
        case 5: r = equilibrium_measure(); break;
        case 6: r = lemniscate_suite(seed); break;
        case 7: r = totik_widom(); break;
        case 8: r = norm_identity(); break;
        case 9: r = two_band(); break;
        case 10: r = transfer(); break;
        case 11: r = averaging(seed); break;
        default: throw std::invalid_argument("unknown check id " + std::to_string(id));
      }
    } catch (const Error& e) {
      r = {id, check_name(id), false, -kInf, std::string(e.kind()) + ": " + e.what(), 0.0};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

void to_json(nlohmann::json& j, const CheckResult& r) {
  j = nlohmann::json{{"id", r.id},         {"name", r.name},     {"passed", r.passed},
                     {"margin", r.margin}, {"detail", r.detail}, {"seconds", r.seconds}};
}

void from_json(const nlohmann::json& j, CheckResult& r) {
  r.id = j.at("id").get<int>();
  r.name = j.at("name").get<std::string>();
  r.passed = j.at("passed").get<bool>();
  r.margin = get_double(j.at("margin"));
  r.detail = j.at("detail").get<std::string>();
  r.seconds = get_double(j.at("seconds"));
}

}  // namespace cheblab
