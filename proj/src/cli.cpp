#include "cheblab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cheblab/chebyshev.hpp"
#include "cheblab/json_io.hpp"
#include "cheblab/lemniscate.hpp"
#include "cheblab/potential.hpp"
#include "cheblab/verify.hpp"
#include "cheblab/widom.hpp"

namespace cheblab {

namespace {

double parse_number(std::string_view s) {
  const std::string text(s);
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
  if (used == 0 || used != text.size()) throw std::invalid_argument("not a number: \"" + text + "\"");
  return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

enum class Format { json, csv, table };

struct Config {
  std::string set, poly, at, capacity = "auto", suite = "all";
  int n = 0;
  int samples = 0;
  int n_cap = 16;
  double alpha = 0.0;
  unsigned seed = 1;
  bool csv = false, table = false, timings = false;
  double cert_tol = 1e-10, quad_tol = 1e-9, period_tol = 1e-8;

  Format format() const { return csv ? Format::csv : table ? Format::table : Format::json; }

  WidomOptions widom() const {
    WidomOptions o;
    o.n_cap = n_cap;
    o.period_tol = period_tol;
    o.cheb.certificate_tol = cert_tol;
    o.quad.abs_tol = quad_tol;
    return o;
  }
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Output {
  json result;
  // Used for --csv; when empty the result must be an object of scalars.
  Table csv;
  bool failed = false;
};

std::string scalar_text(const json& v) {
  if (v.is_number_float()) return num(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

Table flat_table(const json& obj) {
  Table t;
  t.rows.emplace_back();
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (it.value().is_structured()) continue;
    t.header.push_back(it.key());
    t.rows.back().push_back(scalar_text(it.value()));
  }
  return t;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void write_csv(std::ostream& out, const Table& t) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
    out << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

std::string short_text(const json& v) {
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
    return buf;
  }
  if (v.is_array()) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + short_text(v[i]);
    return s + "]";
  }
  return scalar_text(v);
}

void write_table(std::ostream& out, const json& v, int indent) {
  const std::string pad(static_cast<size_t>(indent), ' ');
  constexpr size_t kMaxRows = 20;
  if (v.is_object()) {
    size_t width = 0;
    for (auto it = v.begin(); it != v.end(); ++it) width = std::max(width, it.key().size());
    for (auto it = v.begin(); it != v.end(); ++it) {
      const json& x = it.value();
      const bool nested = x.is_object() || (x.is_array() && std::any_of(x.begin(), x.end(), [](const json& e) {
                                             return e.is_object() || (e.is_array() && e.size() > 4);
                                           }));
      out << pad << it.key();
      if (nested) {
        out << '\n';
        write_table(out, x, indent + 2);
      } else {
        out << std::string(width - it.key().size() + 2, ' ') << short_text(x) << '\n';
      }
    }
  } else if (v.is_array()) {
    for (size_t i = 0; i < v.size() && i < kMaxRows; ++i) {
      if (v[i].is_object()) {
        out << pad << "- " << i << '\n';
        write_table(out, v[i], indent + 2);
      } else {
        out << pad << short_text(v[i]) << '\n';
      }
    }
    if (v.size() > kMaxRows) out << pad << "... " << v.size() - kMaxRows << " more\n";
  } else {
    out << pad << short_text(v) << '\n';
  }
}

IntervalUnion need_set(const Config& c) {
  if (c.set.empty()) throw std::invalid_argument("--set is required");
  return parse_interval_union(c.set);
}

void need_n(const Config& c) {
  if (c.n < 1) throw std::invalid_argument("--n must be >= 1");
}

Output cmd_cheby(const Config& c) {
  need_n(c);
  const ChebyshevSolution sol = solve(need_set(c), c.n, c.widom().cheb);
  Output o{to_json_value(sol), {}, false};
  o.csv.header = {"degree", "coeff"};
  const std::vector<double> rc = sol.T.real_coeffs();
  for (size_t i = 0; i < rc.size(); ++i) o.csv.rows.push_back({std::to_string(i), num(rc[i])});
  return o;
}

Output cmd_capacity(const Config& c) {
  const IntervalUnion e = need_set(c);
  const WidomOptions opts = c.widom();
  const CapacityInfo info = real_capacity(e, parse_capacity_mode(c.capacity), opts);
  const CapacitySequence seq = capacity_upper_sequence(e, opts.n_cap, opts.cheb);
  json r{{"set", to_json_value(e)},
         {"capacity", info.value},
         {"provenance", to_string(info.provenance)},
         {"degree", info.degree},
         {"upper_sequence", seq}};
  if (info.green) r["pw_sum"] = pw_sum(*info.green);
  Output o{r, {}, false};
  o.csv.header = {"n", "upper_bound"};
  for (size_t i = 0; i < seq.s.size(); ++i) o.csv.rows.push_back({std::to_string(i + 1), num(seq.s[i])});
  return o;
}

Output cmd_green(const Config& c) {
  need_n(c);
  if (c.at.empty()) throw std::invalid_argument("--at is required");
  const cplx z = parse_point(c.at);
  const GreenEn ge = GreenEn::from_solution(solve(need_set(c), c.n, c.widom().cheb));
  const double g = green(ge, z);
  return {json{{"n", c.n},
               {"at", json::array({z.real(), z.imag()})},
               {"green", g},
               {"capacity", ge.capacity},
               {"en_bands", to_json_value(ge.en)["bands"]}},
          {{"x", "y", "green"}, {{num(z.real()), num(z.imag()), num(g)}}},
          false};
}

Output cmd_eqmeasure(const Config& c) {
  need_n(c);
  const WidomOptions opts = c.widom();
  const GreenEn ge = GreenEn::from_solution(solve(need_set(c), c.n, opts.cheb));
  const int m = c.samples > 0 ? c.samples : 64;
  Output o;
  o.csv.header = {"x", "density"};
  json samples = json::array();
  for (const Band& b : ge.en.bands()) {
    for (int i = 0; i < m; ++i) {
      const double x = b.lo + b.length() * 0.5 * (1.0 - std::cos(std::numbers::pi * (i + 0.5) / m));
      const double d = eq_density(ge, x);
      samples.push_back(json::array({x, d}));
      o.csv.rows.push_back({num(x), num(d)});
    }
  }
  const std::vector<double> masses = band_masses(ge, opts.quad);
  double total = 0.0;
  for (double v : masses) total += v;
  o.result = json{{"n", c.n},
                  {"en_bands", to_json_value(ge.en)["bands"]},
                  {"band_masses", masses},
                  {"total_mass", total},
                  {"samples", samples}};
  return o;
}

Output cmd_pw(const Config& c) {
  need_n(c);
  const GreenEn ge = GreenEn::from_solution(solve(need_set(c), c.n, c.widom().cheb));
  const std::vector<GapCritical> crit = gap_criticals(ge);
  Output o{json{{"n", c.n}, {"criticals", crit}, {"pw_sum", pw_sum(ge)}}, {}, false};
  o.csv.header = {"w", "g", "gap_left", "gap_right"};
  for (const GapCritical& g : crit) o.csv.rows.push_back({num(g.w), num(g.g_value), num(g.gap.left), num(g.gap.right)});
  return o;
}

LemniscateSet need_lemniscate(const Config& c) {
  if (c.poly.empty()) throw std::invalid_argument("--poly is required");
  if (!(c.alpha > 0.0)) throw std::invalid_argument("--alpha must be positive");
  return {parse_poly_spec(c.poly), c.alpha};
}

Output cmd_lemniscate(const Config& c) {
  const LemniscateSet ls = need_lemniscate(c);
  const LemniscateCurve curve = trace(ls, c.samples > 0 ? c.samples : 2048);
  Output o{json{{"capacity", capacity(ls)}, {"curve", curve}}, {}, false};
  o.csv.header = {"re", "im", "theta", "weight", "component_id"};
  for (size_t k = 0; k < curve.components.size(); ++k)
    for (const CurveSample& s : curve.components[k])
      o.csv.rows.push_back({num(s.z.real()), num(s.z.imag()), num(s.theta), num(s.weight), std::to_string(k)});
  return o;
}

Output cmd_widom(const Config& c) {
  WidomReport rep;
  if (!c.poly.empty()) {
    if (!c.set.empty()) throw std::invalid_argument("give either --set or --poly with --alpha, not both");
    rep = widom_factor(need_lemniscate(c));
  } else {
    need_n(c);
    rep = widom_factor(need_set(c), c.n, parse_capacity_mode(c.capacity), c.widom());
  }
  json r = rep;
  Output o{r, {}, false};
  json flat = r;
  for (const char* key : {"szego", "schiefermayr", "totik_widom"}) {
    const json b = r[key];
    flat.erase(key);
    flat[std::string(key) + "_ok"] = b.is_null() ? json(nullptr) : b["ok"];
    flat[std::string(key) + "_margin"] = b.is_null() ? json(nullptr) : b["margin"];
  }
  o.csv = flat_table(flat);
  return o;
}

Output cmd_transfer(const Config& c) {
  need_n(c);
  if (c.poly.empty()) throw std::invalid_argument("--poly is required");
  const TransferReport rep = preimage_transfer(need_set(c), parse_poly_spec(c.poly), c.n, c.widom());
  json r = to_json_value(rep);
  return {r, flat_table(r), false};
}

Output cmd_verify(const Config& c) {
  const std::vector<CheckResult> checks = run_suite(parse_suite(c.suite), c.seed);
  Output o;
  json list = json::array();
  bool all = true;
  o.csv.header = {"id", "name", "passed", "margin", "detail"};
  if (c.timings) o.csv.header.push_back("seconds");
  for (const CheckResult& r : checks) {
    json j = r;
    if (!c.timings) j.erase("seconds");
    list.push_back(j);
    all = all && r.passed;
    o.csv.rows.push_back({std::to_string(r.id), r.name, r.passed ? "true" : "false", num(r.margin), r.detail});
    if (c.timings) o.csv.rows.back().push_back(num(r.seconds));
  }
  o.result = json{{"suite", c.suite}, {"seed", c.seed}, {"passed", all}, {"checks", list}};
  o.failed = !all;
  return o;
}

json diagnostic(const std::string& command, const Error& e) {
  json d{{"kind", e.kind()}, {"message", e.what()}};
  if (auto* x = dynamic_cast<const ChebyshevConvergenceError*>(&e)) {
    d["lower"] = x->lower();
    d["upper"] = x->upper();
  } else if (auto* x = dynamic_cast<const QuadratureError*>(&e)) {
    d["estimate"] = x->estimate();
    d["error_estimate"] = x->error_estimate();
  } else if (auto* x = dynamic_cast<const NearCriticalError*>(&e)) {
    d["critical_values"] = x->critical_values();
  } else if (auto* x = dynamic_cast<const RootConvergenceError*>(&e)) {
    d["residuals"] = x->residuals();
  }
  return json{{"schema", kSchemaVersion}, {"command", command}, {"error", d}};
}

}  // namespace

Polynomial parse_poly_spec(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
  if (s.empty()) throw std::invalid_argument("empty polynomial");
  std::vector<cplx> c;
  if (s.front() == '[') {
    const json j = json::parse(s, nullptr, false);
    if (j.is_discarded() || !j.is_array()) throw std::invalid_argument("polynomial JSON must be an array: " + s);
    for (const json& v : j) {
      if (v.is_number()) {
        c.emplace_back(v.get<double>(), 0.0);
      } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        c.emplace_back(v[0].get<double>(), v[1].get<double>());
      } else {
        throw std::invalid_argument("polynomial entries must be numbers or [re, im] pairs: " + v.dump());
      }
    }
  } else {
    for (const std::string& part : split(s, ',')) c.emplace_back(parse_number(part), 0.0);
  }
  for (cplx v : c)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::invalid_argument("coefficients must be finite");
  return Polynomial(std::move(c));
}

cplx parse_point(std::string_view text) {
  const std::vector<std::string> parts = split(text, ',');
  if (parts.size() == 1) return {parse_number(parts[0]), 0.0};
  if (parts.size() == 2) return {parse_number(parts[0]), parse_number(parts[1])};
  throw std::invalid_argument("point must be \"x\" or \"x,y\"");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chebyshev polynomials, capacities and Widom factors of real and lemniscate sets", "cheblab"};
  app.require_subcommand(1, 1);
  Config c;

  auto formats = [&](CLI::App* sub) {
    auto* grp = sub->add_option_group("format");
    grp->add_flag("--json", "JSON document (default)");
    grp->add_flag("--csv", c.csv, "CSV rows");
    grp->add_flag("--table", c.table, "Aligned text");
    grp->require_option(0, 1);
  };
  auto tolerances = [&](CLI::App* sub) {
    sub->add_option("--cert-tol", c.cert_tol, "Relative certificate gap for the Chebyshev solver")
        ->check(CLI::Range(1e-14, 1.0));
    sub->add_option("--quad-tol", c.quad_tol, "Absolute quadrature tolerance")->check(CLI::Range(1e-14, 1.0));
    sub->add_option("--period-tol", c.period_tol, "Relative set distance for recognizing a period set")
        ->check(CLI::Range(1e-14, 1.0));
  };
  auto set_opt = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--set", c.set, "Real set, e.g. \"[-1,-0.5]u[0.5,1]\"");
    if (required) o->required();
  };
  auto n_opt = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--n", c.n, "Degree")->check(CLI::Range(1, 512));
    if (required) o->required();
  };
  auto cap_opts = [&](CLI::App* sub) {
    sub->add_option("--capacity", c.capacity, "auto, exact or estimate")
        ->check(CLI::IsMember({"auto", "exact", "estimate"}));
    sub->add_option("--n-cap", c.n_cap, "Largest degree tried for periods and capacity estimates")
        ->check(CLI::Range(1, 128));
  };
  auto poly_opts = [&](CLI::App* sub, bool required) {
    auto* p = sub->add_option("--poly", c.poly, "Coefficients, ascending: \"-1,0,1\" or \"[[re,im],...]\"");
    auto* a = sub->add_option("--alpha", c.alpha, "Level of the lemniscate |P| = alpha");
    if (required) {
      p->required();
      a->required();
    }
  };

  auto* cheby = app.add_subcommand("cheby", "Chebyshev polynomial of a real set");
  set_opt(cheby, true);
  n_opt(cheby, true);

  auto* cap = app.add_subcommand("capacity", "Capacity of a real set");
  set_opt(cap, true);
  cap_opts(cap);

  auto* grn = app.add_subcommand("green", "Green's function of e_n at a point");
  set_opt(grn, true);
  n_opt(grn, true);
  grn->add_option("--at", c.at, "Point \"x,y\"")->required();

  auto* eqm = app.add_subcommand("eqmeasure", "Equilibrium density samples of e_n");
  set_opt(eqm, true);
  n_opt(eqm, true);
  eqm->add_option("--samples", c.samples, "Samples per band")->check(CLI::Range(1, 1 << 20));

  auto* pw = app.add_subcommand("pw", "Gap critical points and Parreau-Widom sum of e_n");
  set_opt(pw, true);
  n_opt(pw, true);

  auto* lem = app.add_subcommand("lemniscate", "Trace |P| = alpha and its equilibrium measure");
  poly_opts(lem, true);
  lem->add_option("--samples", c.samples, "Angles per turn (at least 64 per degree)")->check(CLI::Range(1, 1 << 22));

  auto* wid = app.add_subcommand("widom", "Widom factor report");
  set_opt(wid, false);
  n_opt(wid, false);
  cap_opts(wid);
  poly_opts(wid, false);

  auto* tra = app.add_subcommand("transfer", "Compare T_n(E) o P with T_nk on the preimage set");
  set_opt(tra, true);
  n_opt(tra, true);
  tra->add_option("--poly", c.poly, "Monic real P, ascending coefficients")->required();
  cap_opts(tra);

  auto* ver = app.add_subcommand("verify", "Run the numbered theorem checks");
  ver->add_option("--suite", c.suite, "\"all\" or ids such as \"1,5,9\"");
  ver->add_option("--seed", c.seed, "Seed for random sample points");
  ver->add_flag("--timings", c.timings, "Include wall times (output is then not reproducible)");

  for (CLI::App* sub : {cheby, cap, grn, eqm, pw, lem, wid, tra, ver}) {
    formats(sub);
    tolerances(sub);
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (!app.get_subcommands().empty())
      err << "run with " << app.get_subcommands().front()->get_name() << " --help for usage\n";
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  Output o;
  try {
    if (command == "cheby") o = cmd_cheby(c);
    else if (command == "capacity") o = cmd_capacity(c);
    else if (command == "green") o = cmd_green(c);
    else if (command == "eqmeasure") o = cmd_eqmeasure(c);
    else if (command == "pw") o = cmd_pw(c);
    else if (command == "lemniscate") o = cmd_lemniscate(c);
    else if (command == "widom") o = cmd_widom(c);
    else if (command == "transfer") o = cmd_transfer(c);
    else o = cmd_verify(c);
  } catch (const Error& e) {
    out << dump(diagnostic(command, e)) << '\n';
    err << "error: " << e.kind() << ": " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  switch (c.format()) {
    case Format::json:
      out << dump(envelope(command, o.result)) << '\n';
      break;
    case Format::csv:
      write_csv(out, o.csv.header.empty() ? flat_table(o.result) : o.csv);
      break;
    case Format::table:
      write_table(out, o.result, 0);
      break;
  }
  return o.failed ? kExitNumerical : kExitOk;
}

}  // namespace cheblab
