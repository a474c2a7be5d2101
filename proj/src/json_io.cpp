#include "cheblab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace cheblab {

namespace {

void write_double(std::string& out, double v) {
  if (std::isnan(v)) {
    out += "\"nan\"";
  } else if (std::isinf(v)) {
    out += v > 0 ? "\"inf\"" : "\"-inf\"";
  } else {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
  }
}

void newline(std::string& out, int indent, int level) {
  if (indent < 0) return;
  out += '\n';
  out.append(static_cast<size_t>(indent * level), ' ');
}

void write(std::string& out, const json& j, int indent, int level) {
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += indent < 0 ? ", " : ",";
        first = false;
        newline(out, indent, level + 1);
        out += json(it.key()).dump();
        out += ": ";
        write(out, it.value(), indent, level + 1);
      }
      newline(out, indent, level);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat || indent < 0 ? ", " : ",";
        first = false;
        if (!flat) newline(out, indent, level + 1);
        write(out, v, indent, level + 1);
      }
      if (!flat) newline(out, indent, level);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      write_double(out, j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from(const json& j) {
  if (j.is_array() && j.size() == 2) return {get_double(j[0]), get_double(j[1])};
  return {get_double(j), 0.0};
}

json optional_double(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_double_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return get_double(j);
}

json bands_json(const IntervalUnion& e) {
  json a = json::array();
  for (const Band& b : e.bands()) a.push_back(json::array({b.lo, b.hi}));
  return a;
}

IntervalUnion bands_from(const json& a) {
  std::vector<Band> bands;
  for (const auto& b : a) bands.push_back({get_double(b.at(0)), get_double(b.at(1))});
  return IntervalUnion(std::move(bands));
}

}  // namespace

std::string dump(const json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  return out;
}

double get_double(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument("expected a number, got " + j.dump());
}

void to_json(json& j, const Polynomial& p) {
  j = json::array();
  for (cplx c : p.coeffs()) j.push_back(cplx_json(c));
  if (p.is_zero()) j.push_back(cplx_json(0.0));
}

void from_json(const json& j, Polynomial& p) {
  std::vector<cplx> c;
  for (const auto& v : j) c.push_back(cplx_from(v));
  p = Polynomial(std::move(c));
}

json to_json_value(const IntervalUnion& e) { return json{{"bands", bands_json(e)}}; }

IntervalUnion interval_union_from_json(const json& j) { return bands_from(j.at("bands")); }

json to_json_value(const ChebyshevSolution& s) {
  json ext = json::array();
  for (const Extremum& e : s.extrema) ext.push_back({{"x", e.x}, {"sign", e.sign}});
  return json{{"n", s.n},
              {"t", s.t},
              {"coeffs", s.T},
              {"extrema", ext},
              {"lower_bound", s.lower_bound},
              {"certificate_gap", s.certificate_gap()},
              {"reference", s.reference},
              {"E", to_json_value(s.E)},
              {"en_bands", bands_json(en_set(s))}};
}

ChebyshevSolution chebyshev_solution_from_json(const json& j) {
  std::vector<Extremum> ext;
  for (const auto& e : j.at("extrema")) ext.push_back({get_double(e.at("x")), e.at("sign").get<int>()});
  std::vector<double> ref;
  for (const auto& x : j.at("reference")) ref.push_back(get_double(x));
  return ChebyshevSolution{j.at("coeffs").get<Polynomial>(),
                           get_double(j.at("t")),
                           std::move(ext),
                           get_double(j.at("lower_bound")),
                           interval_union_from_json(j.at("E")),
                           j.at("n").get<int>(),
                           std::move(ref)};
}

void to_json(json& j, const GapCritical& g) {
  j = json{{"w", g.w}, {"g", g.g_value}, {"gap", json::array({g.gap.left, g.gap.right})}};
}

void from_json(const json& j, GapCritical& g) {
  g.w = get_double(j.at("w"));
  g.g_value = get_double(j.at("g"));
  g.gap = {get_double(j.at("gap").at(0)), get_double(j.at("gap").at(1))};
}

void to_json(json& j, const CapacitySequence& s) { j = json{{"s", s.s}, {"min", s.min}, {"argmin", s.argmin}}; }

void from_json(const json& j, CapacitySequence& s) {
  s.s.clear();
  for (const auto& v : j.at("s")) s.s.push_back(get_double(v));
  s.min = get_double(j.at("min"));
  s.argmin = j.at("argmin").get<int>();
}

void to_json(json& j, const BoundStatus& b) { j = json{{"ok", b.ok}, {"margin", b.margin}}; }

void from_json(const json& j, BoundStatus& b) {
  b.ok = j.at("ok").get<bool>();
  b.margin = get_double(j.at("margin"));
}

void to_json(json& j, const WidomReport& r) {
  j = json{{"n", r.n},
           {"t", r.t},
           {"capacity", r.capacity},
           {"provenance", to_string(r.provenance)},
           {"capacity_degree", r.capacity_degree},
           {"W", r.W},
           {"szego", r.szego},
           {"schiefermayr", r.schiefermayr ? json(*r.schiefermayr) : json(nullptr)},
           {"totik_widom", r.totik_widom ? json(*r.totik_widom) : json(nullptr)},
           {"pw", optional_double(r.pw)},
           {"saturation", to_string(r.saturation)}};
}

void from_json(const json& j, WidomReport& r) {
  r.n = j.at("n").get<int>();
  r.t = get_double(j.at("t"));
  r.capacity = get_double(j.at("capacity"));
  r.provenance = parse_provenance(j.at("provenance").get<std::string>());
  r.capacity_degree = j.at("capacity_degree").get<int>();
  r.W = get_double(j.at("W"));
  r.szego = j.at("szego").get<BoundStatus>();
  r.schiefermayr = j.at("schiefermayr").is_null() ? std::nullopt : std::optional(j.at("schiefermayr").get<BoundStatus>());
  r.totik_widom = j.at("totik_widom").is_null() ? std::nullopt : std::optional(j.at("totik_widom").get<BoundStatus>());
  r.pw = optional_double_from(j.at("pw"));
  r.saturation = parse_verdict(j.at("saturation").get<std::string>());
}

void to_json(json& j, const RealSaturation& r) {
  j = json{{"saturated", r.saturated},       {"set_distance", r.set_distance},
           {"norm_condition", r.norm_condition}, {"norm_residual", r.norm_residual},
           {"provenance", to_string(r.provenance)}, {"consistent", r.consistent},
           {"W", r.W},                         {"witness", r.witness}};
}

void from_json(const json& j, RealSaturation& r) {
  r.saturated = j.at("saturated").get<bool>();
  r.set_distance = get_double(j.at("set_distance"));
  r.norm_condition = j.at("norm_condition").get<bool>();
  r.norm_residual = get_double(j.at("norm_residual"));
  r.provenance = parse_provenance(j.at("provenance").get<std::string>());
  r.consistent = j.at("consistent").get<bool>();
  r.W = get_double(j.at("W"));
  r.witness = j.at("witness").get<Polynomial>();
}

void to_json(json& j, const IdentityCheck& r) {
  j = json{{"n", r.n},
           {"log_t", r.log_t},
           {"log_two_cn", r.log_two_cn},
           {"integral", r.integral},
           {"residual", r.residual}};
}

void from_json(const json& j, IdentityCheck& r) {
  r.n = j.at("n").get<int>();
  r.log_t = get_double(j.at("log_t"));
  r.log_two_cn = get_double(j.at("log_two_cn"));
  r.integral = get_double(j.at("integral"));
  r.residual = get_double(j.at("residual"));
}

void to_json(json& j, const TwoBandResult& r) {
  json rows = json::array();
  for (const TwoBandRow& row : r.rows)
    rows.push_back({{"n", row.n}, {"W", row.W}, {"parity", row.odd ? "odd" : "even"}, {"gap", row.gap}});
  j = json{{"a", r.a},
           {"b", r.b},
           {"capacity", r.capacity},
           {"green_at_zero", r.green_at_zero},
           {"limit", r.limit},
           {"rows", rows},
           {"even_saturated", r.even_saturated},
           {"odd_in_range", r.odd_in_range},
           {"odd_increasing", r.odd_increasing},
           {"trend", r.trend}};
}

void from_json(const json& j, TwoBandResult& r) {
  r.a = get_double(j.at("a"));
  r.b = get_double(j.at("b"));
  r.capacity = get_double(j.at("capacity"));
  r.green_at_zero = get_double(j.at("green_at_zero"));
  r.limit = get_double(j.at("limit"));
  r.rows.clear();
  for (const auto& row : j.at("rows"))
    r.rows.push_back({row.at("n").get<int>(), get_double(row.at("W")), row.at("parity").get<std::string>() == "odd",
                      get_double(row.at("gap"))});
  r.even_saturated = j.at("even_saturated").get<bool>();
  r.odd_in_range = j.at("odd_in_range").get<bool>();
  r.odd_increasing = j.at("odd_increasing").get<bool>();
  r.trend = j.at("trend").get<bool>();
}

void to_json(json& j, const LemniscateCurve& c) {
  json comps = json::array();
  for (size_t i = 0; i < c.components.size(); ++i) {
    json samples = json::array();
    for (const CurveSample& s : c.components[i])
      samples.push_back(json::array({s.z.real(), s.z.imag(), s.theta, s.weight}));
    comps.push_back({{"mass", c.masses[i]}, {"enclosed_roots", c.enclosed_roots[i]}, {"samples", samples}});
  }
  j = json{{"n", c.n}, {"alpha", c.alpha}, {"P", c.P}, {"total_mass", c.total_mass()}, {"components", comps}};
}

void from_json(const json& j, LemniscateCurve& c) {
  c.n = j.at("n").get<int>();
  c.alpha = get_double(j.at("alpha"));
  c.P = j.at("P").get<Polynomial>();
  c.components.clear();
  c.masses.clear();
  c.enclosed_roots.clear();
  for (const auto& comp : j.at("components")) {
    std::vector<CurveSample> loop;
    for (const auto& s : comp.at("samples"))
      loop.push_back({{get_double(s.at(0)), get_double(s.at(1))}, get_double(s.at(2)), get_double(s.at(3))});
    c.components.push_back(std::move(loop));
    c.masses.push_back(get_double(comp.at("mass")));
    c.enclosed_roots.push_back(comp.at("enclosed_roots").get<int>());
  }
}

void to_json(json& j, const ComplexSaturation& s) {
  j = json{{"samples", s.samples},
           {"inside", s.inside},
           {"fraction", s.fraction},
           {"saturated", s.saturated},
           {"norm_ratio", s.norm_ratio}};
}

void from_json(const json& j, ComplexSaturation& s) {
  s.samples = j.at("samples").get<std::size_t>();
  s.inside = j.at("inside").get<std::size_t>();
  s.fraction = get_double(j.at("fraction"));
  s.saturated = j.at("saturated").get<bool>();
  s.norm_ratio = get_double(j.at("norm_ratio"));
}

void to_json(json& j, const AverageResult& r) {
  json samples = json::array();
  for (const auto& [z, s] : r.sigma_samples) samples.push_back({{"z", cplx_json(z)}, {"sigma", cplx_json(s)}});
  j = json{{"sigma_samples", samples}, {"q_hat", r.q_hat}, {"gamma", cplx_json(r.gamma)}};
}

void from_json(const json& j, AverageResult& r) {
  r.sigma_samples.clear();
  for (const auto& s : j.at("sigma_samples")) r.sigma_samples.emplace_back(cplx_from(s.at("z")), cplx_from(s.at("sigma")));
  r.q_hat = j.at("q_hat").get<Polynomial>();
  r.gamma = cplx_from(j.at("gamma"));
}

json to_json_value(const TransferReport& r) {
  return json{{"n", r.n},
              {"k", r.k},
              {"e_p", to_json_value(r.e_p)},
              {"composed", r.composed},
              {"direct", r.direct},
              {"t_e", r.t_e},
              {"t_p", r.t_p},
              {"c_e", r.c_e},
              {"c_p", r.c_p},
              {"provenance", to_string(r.provenance)},
              {"W_e", r.W_e},
              {"W_p", r.W_p},
              {"coeff_deviation", r.coeff_deviation},
              {"t_deviation", r.t_deviation},
              {"W_deviation", r.W_deviation}};
}

TransferReport transfer_report_from_json(const json& j) {
  return TransferReport{j.at("n").get<int>(),
                        j.at("k").get<int>(),
                        interval_union_from_json(j.at("e_p")),
                        j.at("composed").get<Polynomial>(),
                        j.at("direct").get<Polynomial>(),
                        get_double(j.at("t_e")),
                        get_double(j.at("t_p")),
                        get_double(j.at("c_e")),
                        get_double(j.at("c_p")),
                        parse_provenance(j.at("provenance").get<std::string>()),
                        get_double(j.at("W_e")),
                        get_double(j.at("W_p")),
                        get_double(j.at("coeff_deviation")),
                        get_double(j.at("t_deviation")),
                        get_double(j.at("W_deviation"))};
}

json envelope(const std::string& command, json result) {
  return json{{"schema", kSchemaVersion}, {"command", command}, {"result", std::move(result)}};
}

}  // namespace cheblab
