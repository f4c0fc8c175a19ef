#include "rlab/cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "rlab/errors.hpp"
#include "rlab/io.hpp"

namespace rlab::cli {

namespace {

using io::json;

struct Common {
  std::string out;
  std::string format = "json";
  std::string csv;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  unsigned threads = 0;
};

struct LatticeFlags {
  double ymax = LatticeSpec{}.y_max;
  double step = LatticeSpec{}.step;
  std::vector<double> increments;

  LatticeSpec spec() const {
    LatticeSpec l{ymax, step, increments.empty() ? std::vector<double>{step, 2.0 * step} : increments};
    l.validate();
    return l;
  }
};

std::uint64_t env_seed() {
  const char* s = std::getenv("REARRANGE_LAB_SEED");
  if (s == nullptr || *s == '\0') return kDefaultSeed;
  char* end = nullptr;
  errno = 0;
  unsigned long long v = std::strtoull(s, &end, 10);
  if (errno != 0 || *end != '\0' || *s == '-') {
    throw ConstructionError(std::string("REARRANGE_LAB_SEED is not an unsigned integer: '") + s + "'");
  }
  return v;
}

void add_common(CLI::App* app, Common& c, bool sampling) {
  app->add_option("--out", c.out, "Write the report to FILE instead of standard output");
  app->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--threads", c.threads, "Worker threads (0 = hardware concurrency)");
  if (sampling) {
    app->add_option("--seed", c.seed, "Monte Carlo seed (default: $REARRANGE_LAB_SEED)");
    app->add_option("--samples", c.samples, "Monte Carlo sample pairs per region pair");
  }
}

void add_lattice(CLI::App* app, LatticeFlags& l) {
  app->add_option("--ymax", l.ymax, "Largest lattice coordinate");
  app->add_option("--step", l.step, "Lattice spacing");
  app->add_option("--increments", l.increments, "Increments h, k (default: step and 2*step)");
}

json lattice_json(const LatticeSpec& l) {
  return {{"ymax", l.y_max}, {"step", l.step}, {"increments", l.increments}};
}

LatticeSpec lattice_from_json(const json& config) {
  if (!config.contains("lattice")) return {};
  const auto& j = config.at("lattice");
  LatticeSpec l;
  l.y_max = j.value("ymax", l.y_max);
  l.step = j.value("step", l.step);
  l.increments = j.contains("increments") ? j.at("increments").get<std::vector<double>>()
                                          : std::vector<double>{l.step, 2.0 * l.step};
  l.validate();
  return l;
}

// --integrand takes an expression, or a JSON table spec when it starts with '{'.
json integrand_spec(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    try {
      return json::parse(text);
    } catch (const json::exception& e) {
      throw ConstructionError(std::string("malformed integrand JSON: ") + e.what());
    }
  }
  return text;
}

// --kernel takes inline JSON or a path to a JSON file.
json kernel_spec(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    try {
      return json::parse(text);
    } catch (const json::exception& e) {
      throw ConstructionError(std::string("malformed kernel JSON: ") + e.what());
    }
  }
  return io::load_json_file(text);
}

std::size_t config_arity(const json& config, std::size_t fallback) {
  if (!config.contains("arity")) return fallback;
  const auto& a = config.at("arity");
  if (!a.is_number_integer() || a.get<long long>() < 1) throw ConstructionError("'arity' must be a positive integer");
  return a.get<std::size_t>();
}

const json& required(const json& config, const char* key) {
  if (!config.contains(key)) throw ConstructionError(std::string("config is missing '") + key + "'");
  return config.at(key);
}

int config_dim(const json& config) {
  int n = config.value("dim", 1);
  if (n < 1 || n > kMaxDimension) throw ConstructionError("'dim' must be 1, 2 or 3");
  return n;
}

MonteCarloOptions sampling(const Common& c, const json& config) {
  MonteCarloOptions mc;
  mc.seed = env_seed();
  if (config.contains("seed")) mc.seed = config.at("seed").get<std::uint64_t>();
  if (config.contains("samples")) mc.samples = config.at("samples").get<std::size_t>();
  if (c.seed) mc.seed = *c.seed;
  if (c.samples) mc.samples = *c.samples;
  mc.threads = c.threads;
  if (mc.samples == 0) throw ConstructionError("--samples must be positive");
  return mc;
}

std::vector<SimpleFunction> load_functions(const std::vector<std::string>& paths) {
  std::vector<SimpleFunction> out;
  for (const auto& p : paths) out.push_back(io::function_from_json(io::load_json_file(p)));
  for (const auto& f : out) {
    if (f.dimension() != out.front().dimension()) throw ConstructionError("functions differ in dimension");
  }
  return out;
}

void emit(const Common& c, const json& report, const std::optional<std::string>& csv, std::ostream& out) {
  std::string body;
  if (c.format == "csv") {
    if (!csv) throw ConstructionError("--format csv is only available for demo reports");
    body = *csv;
  } else {
    body = report.dump(2) + "\n";
  }
  if (c.out.empty()) {
    out << body;
  } else {
    std::ofstream f(c.out);
    if (!f) throw ConstructionError("cannot write '" + c.out + "'");
    f << body;
  }
  if (!c.csv.empty() && csv) {
    std::ofstream f(c.csv);
    if (!f) throw ConstructionError("cannot write '" + c.csv + "'");
    f << *csv;
  }
}

std::string error_kind(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const EvaluationError*>(&e)) return "EvaluationError";
  if (dynamic_cast<const HypothesisViolated*>(&e)) return "HypothesisViolated";
  if (dynamic_cast<const UnsupportedGeometry*>(&e)) return "UnsupportedGeometry";
  if (dynamic_cast<const NotAWitness*>(&e)) return "NotAWitness";
  if (dynamic_cast<const NoStrictDecreaseFound*>(&e)) return "NoStrictDecreaseFound";
  if (dynamic_cast<const LimitViolated*>(&e)) return "LimitViolated";
  if (dynamic_cast<const SamplingError*>(&e)) return "SamplingError";
  return "ConstructionError";
}

json witness_or_null(const LatticeVerdict& v) { return v.passed ? json(nullptr) : io::to_json(v.worst); }

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string integrand;
  std::size_t arity = 2;
  bool strict = false;
  bool c2 = false;
  double fd_step = kDefaultFdStep;
  LatticeFlags lattice;
};

int cmd_check(const CheckArgs& a, const Common& c, std::ostream& out) {
  auto spec = integrand_spec(a.integrand);
  auto f = io::integrand_from_json(spec, a.arity);
  if (a.arity < 2) throw ConstructionError("--arity must be at least 2");
  auto lattice = a.lattice.spec();
  ScanOptions scan{c.threads};
  auto v = a.strict ? check_strict_supermodular(f, lattice, scan) : check_supermodular(f, lattice, scan);
  json config = {{"integrand", spec}, {"arity", a.arity}, {"strict", a.strict}, {"lattice", lattice_json(lattice)}};
  std::string verdict = a.strict ? (v.passed ? "StrictOnLattice" : "NonStrict") : (v.passed ? "PassedOnLattice" : "Violation");
  json report = {{"command", "check-supermodular"},
                 {"config", config},
                 {"verdict", verdict},
                 {"value", v.worst.delta},
                 {"stderr", 0.0},
                 {"min_delta", v.worst.delta},
                 {"worst", io::to_json(v.worst)},
                 {"witness", witness_or_null(v)},
                 {"quadruples", v.quadruples},
                 {"seed", nullptr}};
  if (a.c2) {
    auto m = check_c2_supermodular(f, lattice, a.fd_step);
    report["config"]["fd_step"] = a.fd_step;
    report["mixed_difference"] = {{"passed", m.passed}, {"minimum", m.minimum}, {"location", m.location},
                                  {"i", m.i + 1},       {"j", m.j + 1},       {"points", m.points}};
  }
  emit(c, report, std::nullopt, out);
  return v.passed ? kOk : kViolation;
}

int cmd_find_witness(const CheckArgs& a, const Common& c, std::ostream& out) {
  auto spec = integrand_spec(a.integrand);
  auto f = io::integrand_from_json(spec, a.arity);
  if (a.arity < 2) throw ConstructionError("--arity must be at least 2");
  auto lattice = a.lattice.spec();
  auto v = check_supermodular(f, lattice, ScanOptions{c.threads});
  auto hp = vanishes_on_hyperplanes(f);
  json report = {{"command", "find-witness"},
                 {"config", {{"integrand", spec}, {"arity", a.arity}, {"lattice", lattice_json(lattice)}}},
                 {"verdict", v.passed ? "PassedOnLattice" : "Violation"},
                 {"value", v.worst.delta},
                 {"stderr", 0.0},
                 {"witness", witness_or_null(v)},
                 {"quadruples", v.quadruples},
                 {"vanishes_on_hyperplanes", hp.vanishes},
                 {"hyperplane_probe", hp.vanishes ? json(nullptr) : json{{"y", hp.witness}, {"value", hp.value}}},
                 {"seed", nullptr}};
  emit(c, report, std::nullopt, out);
  return v.passed ? kOk : kViolation;
}

int cmd_rearrange(const std::vector<std::string>& paths, const Common& c, std::ostream& out) {
  auto fs = load_functions(paths);
  json inputs = json::array(), outputs = json::array(), measures = json::array();
  for (const auto& f : fs) {
    inputs.push_back(io::to_json(f));
    outputs.push_back(io::to_json(rearrange(f)));
    measures.push_back(f.support_measure());
  }
  json report = {{"command", "rearrange"},
                 {"config", {{"functions", paths}}},
                 {"verdict", "ok"},
                 {"value", measures},
                 {"stderr", 0.0},
                 {"inputs", inputs},
                 {"rearranged", outputs},
                 {"seed", nullptr}};
  emit(c, report, std::nullopt, out);
  return kOk;
}

struct EvalArgs {
  std::string integrand;
  std::size_t arity = 0;
  std::vector<std::string> functions;
  std::string kernel;
  std::string f;
  std::string g;
  bool compare = false;
  bool monte_carlo = false;
};

// Symmetrization comparison: holds when lhs <= rhs within tolerance.
json comparison(const IntegralEstimate& lhs, const IntegralEstimate& rhs, bool& holds) {
  double tol = lhs.method == Method::MonteCarlo || rhs.method == Method::MonteCarlo
                   ? 4.0 * std::hypot(lhs.std_error, rhs.std_error) + kViolationTolerance
                   : kViolationTolerance;
  holds = lhs.value <= rhs.value + tol;
  return {{"symmetrized", io::to_json(rhs)}, {"gap", lhs.value - rhs.value}, {"tolerance", tol}};
}

int cmd_eval_hl(const EvalArgs& a, const Common& c, std::ostream& out) {
  auto fs = load_functions(a.functions);
  std::size_t arity = a.arity == 0 ? fs.size() : a.arity;
  if (arity != fs.size()) throw ConstructionError("--arity does not match the number of --functions");
  auto spec = integrand_spec(a.integrand);
  auto F = io::integrand_from_json(spec, arity);
  auto est = eval_hl(F, fs);
  json report = {{"command", "eval-hl"},
                 {"config", {{"integrand", spec}, {"arity", arity}, {"functions", a.functions}}},
                 {"verdict", "evaluated"},
                 {"value", est.value},
                 {"stderr", est.std_error},
                 {"method", to_string(est.method)},
                 {"seed", nullptr}};
  int code = kOk;
  if (a.compare) {
    std::vector<SimpleFunction> sym;
    for (const auto& f : fs) sym.push_back(rearrange(f));
    bool holds = true;
    report["comparison"] = comparison(est, eval_hl(F, sym), holds);
    report["verdict"] = holds ? "holds" : "violated";
    code = holds ? kOk : kViolation;
  }
  emit(c, report, std::nullopt, out);
  return code;
}

int cmd_eval_riesz(const EvalArgs& a, const Common& c, std::ostream& out) {
  if (a.arity != 0 && a.arity != 2) throw ConstructionError("the Riesz functional takes an integrand of arity 2");
  auto spec = integrand_spec(a.integrand);
  auto psi = io::integrand_from_json(spec, 2);
  auto kspec = kernel_spec(a.kernel);
  auto k = io::kernel_from_json(kspec);
  auto fs = load_functions({a.f, a.g});
  auto mc = sampling(c, json::object());
  mc.force_monte_carlo = a.monte_carlo;
  auto est = eval_riesz2(psi, fs[0], fs[1], k, mc);
  json report = {{"command", "eval-riesz"},
                 {"config",
                  {{"integrand", spec},
                   {"kernel", kspec},
                   {"f", a.f},
                   {"g", a.g},
                   {"samples", mc.samples},
                   {"monte_carlo", a.monte_carlo}}},
                 {"verdict", "evaluated"},
                 {"value", est.value},
                 {"stderr", est.std_error},
                 {"method", to_string(est.method)},
                 {"seed", mc.seed}};
  int code = kOk;
  if (a.compare) {
    bool holds = true;
    report["comparison"] = comparison(est, eval_riesz2(psi, rearrange(fs[0]), rearrange(fs[1]), k, mc), holds);
    report["verdict"] = holds ? "holds" : "violated";
    code = holds ? kOk : kViolation;
  }
  emit(c, report, std::nullopt, out);
  return code;
}

// ---------------------------------------------------------------------------

json demo_report(const std::string& name, const json& config, const CounterexampleReport& r,
                 std::optional<std::uint64_t> seed) {
  json report = io::to_json(r);
  report["command"] = "demo " + name;
  report["config"] = config;
  report["verdict"] = r.certified && r.consistent ? "violation_certified" : "not_certified";
  report["value"] = r.gap;
  report["stderr"] = r.rows.empty() ? 0.0 : r.rows.back().std_error;
  report["seed"] = seed ? json(*seed) : json(nullptr);
  return report;
}

// Witness from the config, or the smallest-slack quadruple on the lattice.
std::optional<SupermodularityWitness> demo_witness(const Integrand& f, const json& config, unsigned threads) {
  if (config.contains("witness")) {
    auto w = io::witness_from_json(config.at("witness"));
    if (w.i == w.j || w.i >= f.arity() || w.j >= f.arity() || w.y.size() != f.arity()) {
      throw ConstructionError("witness does not match the integrand arity");
    }
    w.delta = supermodular_delta(f, w);
    return w;
  }
  auto v = check_supermodular(f, lattice_from_json(config), ScanOptions{threads});
  if (v.passed) return std::nullopt;
  return v.worst;
}

int no_violation(const std::string& name, const json& config, const Common& c, std::ostream& out) {
  json report = {{"command", "demo " + name},
                 {"config", config},
                 {"verdict", "PassedOnLattice"},
                 {"value", nullptr},
                 {"stderr", 0.0},
                 {"witness", nullptr},
                 {"seed", nullptr}};
  emit(c, report, std::nullopt, out);
  return kOk;
}

int finish_demo(const std::string& name, const json& config, const CounterexampleReport& r,
                std::optional<std::uint64_t> seed, const Common& c, std::ostream& out) {
  emit(c, demo_report(name, config, r, seed), io::to_csv(r), out);
  return r.certified && r.consistent ? kViolation : kOk;
}

int cmd_prop31(const json& config, const Common& c, std::ostream& out) {
  std::size_t arity = config_arity(config, 2);
  auto f = io::integrand_from_json(required(config, "integrand"), arity);
  auto w = demo_witness(f, config, c.threads);
  if (!w) return no_violation("prop31", config, c, out);
  return finish_demo("prop31", config, build_hl_counterexample(f, *w, config_dim(config)), std::nullopt, c, out);
}

int cmd_prop32(const json& config, const Common& c, std::ostream& out) {
  auto psi = io::integrand_from_json(required(config, "integrand"), config_arity(config, 2));
  auto k = io::kernel_from_json(required(config, "kernel"));
  auto w = demo_witness(psi, config, c.threads);
  if (!w) return no_violation("prop32", config, c, out);
  RieszOptions opts;
  opts.monte_carlo = sampling(c, config);
  if (config.contains("eps") || config.contains("t0")) {
    opts.eps_t0 = EpsT0{required(config, "eps").get<double>(), required(config, "t0").get<double>()};
  }
  if (config.contains("R_list")) opts.radii = config.at("R_list").get<std::vector<double>>();
  auto r = build_riesz_counterexample(psi, *w, k, config_dim(config), opts);
  return finish_demo("prop32", config, r, opts.monte_carlo.seed, c, out);
}

int cmd_prop33(const json& config, const Common& c, std::ostream& out) {
  auto psi = io::integrand_from_json(config.value("integrand", json("x1*x2")), config_arity(config, 2));
  auto h = io::kernel_from_json(required(config, "kernel"));
  MonotonicityInput in;
  in.z1 = required(config, "z1").get<std::vector<double>>();
  in.z2 = required(config, "z2").get<std::vector<double>>();
  in.eps = required(config, "eps").get<double>();
  in.a = config.value("a", 1.0);
  in.b = config.value("b", 1.0);
  auto mc = sampling(c, config);
  auto r = build_kernel_monotonicity_counterexample(psi, h, in, mc);
  return finish_demo("prop33", config, r, mc.seed, c, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetric decreasing rearrangement laboratory", "rearrange-lab"};
  app.require_subcommand(1);

  Common common;
  CheckArgs check;
  EvalArgs eval;
  std::vector<std::string> rearrange_paths;
  std::string rearrange_f;
  std::string config_path;

  auto* c_check = app.add_subcommand("check-supermodular", "Scan an integrand for supermodularity violations");
  c_check->add_option("--integrand", check.integrand, "Expression in x1..xM, or a JSON table spec")->required();
  c_check->add_option("--arity", check.arity, "Number of arguments M")->required();
  c_check->add_flag("--strict", check.strict, "Demand strict supermodularity");
  c_check->add_flag("--c2", check.c2, "Also report the minimum mixed second difference");
  c_check->add_option("--fd-step", check.fd_step, "Finite-difference step for --c2");
  add_lattice(c_check, check.lattice);
  add_common(c_check, common, false);

  auto* c_find = app.add_subcommand("find-witness", "Report the smallest-slack violation quadruple");
  c_find->add_option("--integrand", check.integrand, "Expression in x1..xM, or a JSON table spec")->required();
  c_find->add_option("--arity", check.arity, "Number of arguments M")->required();
  add_lattice(c_find, check.lattice);
  add_common(c_find, common, false);

  auto* c_rearr = app.add_subcommand("rearrange", "Schwarz-symmetrize simple functions");
  auto* rf = c_rearr->add_option("--f", rearrange_f, "Function file");
  auto* rfs = c_rearr->add_option("--functions", rearrange_paths, "Function files");
  rf->excludes(rfs);
  add_common(c_rearr, common, false);

  auto* c_hl = app.add_subcommand("eval-hl", "Evaluate the Hardy-Littlewood functional");
  c_hl->add_option("--integrand", eval.integrand, "Expression in x1..xM")->required();
  c_hl->add_option("--arity", eval.arity, "Number of arguments (default: number of functions)");
  c_hl->add_option("--functions", eval.functions, "Function files u_1..u_M")->required();
  c_hl->add_flag("--compare", eval.compare, "Also evaluate at the symmetrized functions");
  add_common(c_hl, common, false);

  auto* c_riesz = app.add_subcommand("eval-riesz", "Evaluate the two-function Riesz functional");
  c_riesz->add_option("--integrand", eval.integrand, "Expression in x1, x2")->required();
  c_riesz->add_option("--arity", eval.arity, "Must be 2 when given");
  c_riesz->add_option("--kernel", eval.kernel, "Kernel JSON, inline or as a file path")->required();
  c_riesz->add_option("--f", eval.f, "Function file f")->required();
  c_riesz->add_option("--g", eval.g, "Function file g")->required();
  c_riesz->add_flag("--compare", eval.compare, "Also evaluate at the symmetrized functions");
  c_riesz->add_flag("--monte-carlo", eval.monte_carlo, "Sample even where an exact path exists");
  add_common(c_riesz, common, true);

  auto* c_demo = app.add_subcommand("demo", "Run a counterexample construction");
  c_demo->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> demos;
  const std::pair<const char*, const char*> demo_names[] = {
      {"prop31", "Hardy-Littlewood counterexample from a supermodularity witness"},
      {"prop32", "Riesz counterexample from a witness (ball and annulus construction)"},
      {"prop33", "Riesz counterexample for a kernel that grows between two points"}};
  for (auto [name, about] : demo_names) {
    auto* d = c_demo->add_subcommand(name, about);
    d->add_option("--config", config_path, "JSON config file")->required();
    d->add_option("--csv", common.csv, "Also write the CSV summary to FILE");
    add_common(d, common, std::string(name) != "prop31");
    demos.emplace_back(name, d);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (c_check->parsed()) return cmd_check(check, common, out);
    if (c_find->parsed()) return cmd_find_witness(check, common, out);
    if (c_rearr->parsed()) {
      if (!rearrange_f.empty()) rearrange_paths.insert(rearrange_paths.begin(), rearrange_f);
      if (rearrange_paths.empty()) throw ConstructionError("rearrange needs --f or --functions");
      return cmd_rearrange(rearrange_paths, common, out);
    }
    if (c_hl->parsed()) return cmd_eval_hl(eval, common, out);
    if (c_riesz->parsed()) return cmd_eval_riesz(eval, common, out);
    for (const auto& [name, d] : demos) {
      if (!d->parsed()) continue;
      json config = io::load_json_file(config_path);
      if (!config.is_object()) throw ConstructionError("config must be a JSON object");
      if (name == "prop31") return cmd_prop31(config, common, out);
      if (name == "prop32") return cmd_prop32(config, common, out);
      return cmd_prop33(config, common, out);
    }
  } catch (const Error& e) {
    err << "error [" << error_kind(e) << "]: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    err << "error [ConstructionError]: malformed config: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace rlab::cli
