#include "rlab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rlab/errors.hpp"

namespace rlab::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConstructionError(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) throw ConstructionError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::string text(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) throw ConstructionError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> numbers(const json& v, const char* key) {
  if (!v.is_array()) throw ConstructionError(std::string("field '") + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConstructionError(std::string("field '") + key + "' must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<double> numbers(const json& j, const char* key, bool) { return numbers(field(j, key), key); }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json pairs_object(const std::vector<std::pair<std::string, double>>& pairs) {
  json o = json::object();
  for (const auto& [k, v] : pairs) o[k] = finite_or_null(v);
  return o;
}

std::string csv_number(double v) {
  if (!std::isfinite(v)) return "";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

}  // namespace

json to_json(const Region& r) {
  switch (r.shape()) {
    case Shape::Interval:
      return {{"type", "interval"}, {"lo", r.as<Interval>().lo}, {"hi", r.as<Interval>().hi}};
    case Shape::Ball:
      return {{"type", "ball"}, {"center", r.as<Ball>().center}, {"radius", r.as<Ball>().radius}};
    case Shape::Annulus: {
      const auto& a = r.as<Annulus>();
      return {{"type", "annulus"}, {"center", a.center}, {"r_in", a.r_in}, {"r_out", a.r_out}};
    }
    case Shape::Box:
      return {{"type", "box"}, {"lo", r.as<Box>().lo}, {"hi", r.as<Box>().hi}};
    case Shape::Union: {
      json parts = json::array();
      for (const auto& p : r.as<DisjointUnion>().parts) parts.push_back(to_json(p));
      return {{"type", "union"}, {"parts", parts}};
    }
    case Shape::Difference:
      return {{"type", "difference"},
              {"outer", to_json(*r.as<Difference>().outer)},
              {"hole", to_json(*r.as<Difference>().hole)}};
  }
  return {};
}

Region region_from_json(const json& j) {
  const std::string type = text(j, "type");
  if (type == "interval") return Region::interval(number(j, "lo"), number(j, "hi"));
  if (type == "ball") return Region::ball(numbers(j, "center", true), number(j, "radius"));
  if (type == "annulus") return Region::annulus(numbers(j, "center", true), number(j, "r_in"), number(j, "r_out"));
  if (type == "box") return Region::box(numbers(j, "lo", true), numbers(j, "hi", true));
  if (type == "union") {
    const auto& parts = field(j, "parts");
    if (!parts.is_array()) throw ConstructionError("field 'parts' must be an array");
    std::vector<Region> regions;
    for (const auto& p : parts) regions.push_back(region_from_json(p));
    return Region::disjoint_union(std::move(regions));
  }
  if (type == "difference") return Region::difference(region_from_json(field(j, "outer")), region_from_json(field(j, "hole")));
  throw ConstructionError("unknown region type '" + type + "'");
}

json to_json(const SimpleFunction& f) {
  json pieces = json::array();
  for (const auto& p : f.pieces()) pieces.push_back({{"value", p.value}, {"region", to_json(p.region)}});
  return {{"dim", f.dimension()}, {"pieces", pieces}};
}

SimpleFunction function_from_json(const json& j) {
  const auto& dim = field(j, "dim");
  if (!dim.is_number_integer()) throw ConstructionError("field 'dim' must be an integer");
  const auto& pieces = field(j, "pieces");
  if (!pieces.is_array()) throw ConstructionError("field 'pieces' must be an array");
  std::vector<Piece> out;
  for (const auto& p : pieces) out.push_back({number(p, "value"), region_from_json(field(p, "region"))});
  return SimpleFunction(dim.get<int>(), std::move(out));
}

json to_json(const Kernel& k) {
  switch (k.form()) {
    case Kernel::Form::IndicatorBall:
      return {{"type", "indicator"}, {"R", k.indicator_radius()}};
    case Kernel::Form::RadialExpression:
      return {{"type", "radial"}, {"expr", k.expression()->source()}};
    case Kernel::Form::Field:
      return {{"type", "field"}, {"expr", k.expression()->source()}};
    case Kernel::Form::RadialTable:
      return {{"type", "table"},
              {"r", k.table_breakpoints()},
              {"values", k.table_values()},
              {"mode", k.table_mode() == TableMode::Step ? "step" : "linear"}};
  }
  return {};
}

Kernel kernel_from_json(const json& j) {
  const std::string type = text(j, "type");
  if (type == "indicator") return Kernel::indicator(number(j, "R"));
  if (type == "radial") return Kernel::radial(text(j, "expr"));
  if (type == "field") return Kernel::field(text(j, "expr"));
  if (type == "table") {
    std::string mode = j.contains("mode") ? text(j, "mode") : "step";
    if (mode != "step" && mode != "linear") throw ConstructionError("kernel table mode must be 'step' or 'linear'");
    return Kernel::radial_table(numbers(j, "r", true), numbers(j, "values", true),
                                mode == "step" ? TableMode::Step : TableMode::Linear);
  }
  throw ConstructionError("unknown kernel type '" + type + "'");
}

Integrand integrand_from_json(const json& spec, std::size_t arity) {
  if (spec.is_string()) return Integrand::parse(spec.get<std::string>(), arity);
  const auto& table = field(spec, "table");
  GridTable g;
  const auto& axes = field(table, "axes");
  if (!axes.is_array()) throw ConstructionError("field 'axes' must be an array");
  for (const auto& axis : axes) g.axes.push_back(numbers(axis, "axes"));
  g.values = numbers(table, "values", true);
  auto f = Integrand::tabulated(std::move(g));
  if (f.arity() != arity) throw ConstructionError("table dimension does not match the declared arity");
  return f;
}

json to_json(const IntegralEstimate& e) {
  json j = {{"value", e.value}, {"stderr", e.std_error}, {"method", to_string(e.method)}};
  if (e.method == Method::MonteCarlo) {
    j["samples"] = e.samples;
    j["seed"] = e.seed;
  }
  return j;
}

json to_json(const SupermodularityWitness& w) {
  return {{"i", w.i + 1}, {"j", w.j + 1}, {"y", w.y}, {"h", w.h}, {"k", w.k}, {"delta", w.delta}};
}

SupermodularityWitness witness_from_json(const json& j) {
  SupermodularityWitness w;
  double i = number(j, "i");
  double jj = number(j, "j");
  if (i < 1 || jj < 1 || i != std::floor(i) || jj != std::floor(jj)) {
    throw ConstructionError("witness indices are 1-based integers");
  }
  w.i = static_cast<std::size_t>(i) - 1;
  w.j = static_cast<std::size_t>(jj) - 1;
  w.y = numbers(j, "y", true);
  w.h = number(j, "h");
  w.k = number(j, "k");
  if (!(w.h > 0.0) || !(w.k > 0.0)) throw ConstructionError("witness increments must be positive");
  for (double c : w.y) {
    if (c < 0.0) throw ConstructionError("witness point must be nonnegative");
  }
  return w;
}

json to_json(const CounterexampleReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"label", row.label},
                    {"parameter", row.parameter},
                    {"lhs", to_json(row.lhs)},
                    {"rhs", to_json(row.rhs)},
                    {"gap", row.gap},
                    {"rhs_minus_lhs", -row.gap},
                    {"stderr", row.std_error},
                    {"decomposition", finite_or_null(row.decomposition)},
                    {"I_eps", finite_or_null(row.i_eps)},
                    {"I_R", finite_or_null(row.i_r)},
                    {"consistent", row.consistent}});
  }
  json functions = json::object();
  for (const auto& [name, f] : r.functions) functions[name] = to_json(f);
  json j = {{"construction", r.construction},
            {"parameters", pairs_object(r.parameters)},
            {"terms", pairs_object(r.terms)},
            {"functions", functions},
            {"rows", rows},
            {"gap", r.gap},
            {"tolerance", r.tolerance},
            {"certified", r.certified},
            {"consistent", r.consistent}};
  j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  return j;
}

std::string to_csv(const CounterexampleReport& r) {
  std::ostringstream os;
  os << "R_or_pair,lhs,rhs,gap,I_eps,I_R,stderr\n";
  for (const auto& row : r.rows) {
    os << csv_field(row.label) << ',' << csv_number(row.lhs.value) << ',' << csv_number(row.rhs.value) << ','
       << csv_number(row.gap) << ',' << csv_number(row.i_eps) << ',' << csv_number(row.i_r) << ','
       << csv_number(row.std_error) << '\n';
  }
  return os.str();
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConstructionError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConstructionError("malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace rlab::io
