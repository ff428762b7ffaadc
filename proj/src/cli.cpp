#include "cperiod/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "cperiod/builtins.hpp"
#include "cperiod/descriptor.hpp"
#include "cperiod/errors.hpp"
#include "cperiod/report_io.hpp"
#include "cperiod/stepanov.hpp"

namespace cperiod::cli {
namespace {

enum class Type { Number, Integer, Bool, String, Json, SignalSpec };

struct Field {
  std::string key;
  Type type;
  std::string help;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> all{
      {"signal", Type::SignalSpec, "builtin name or descriptor JSON {name, params, transforms}"},
      {"c", Type::Json, "multiplier JSON {arg_kind, p, q} | {arg_kind, phi} | {re, im}"},
      {"epsilon", Type::Number, "defect tolerance"},
      {"tau", Type::Number, "shift"},
      {"tau_max", Type::Number, "largest scanned shift"},
      {"tau_step", Type::Number, "shift spacing"},
      {"grid", Type::Json, "grid JSON {start, end, step}"},
      {"alphas", Type::Json, "JSON array of shifts"},
      {"p_candidates", Type::Json, "JSON array of candidate periods"},
      {"m_max", Type::Integer, "largest multiple checked"},
      {"p", Type::Number, "Stepanov exponent"},
      {"nodes", Type::Integer, "quadrature nodes per unit window"},
      {"starts", Type::Json, "window-start grid JSON"},
      {"r", Type::Number, "frequency"},
      {"frequencies", Type::Json, "JSON array or grid of frequencies"},
      {"threshold", Type::Number, "smallest reported coefficient modulus"},
      {"horizons", Type::Json, "JSON array of averaging horizons"},
      {"T0", Type::Number, "first doubling horizon"},
      {"count", Type::Integer, "number of doubling horizons"},
      {"tol", Type::Number, "convergence tolerance"},
      {"step", Type::Number, "quadrature step"},
      {"n_count", Type::Integer, "number of multiples n tau on the decay curve"},
      {"phi", Type::Number, "rotation angle over pi"},
      {"target", Type::Json, "target point JSON {re, im}"},
      {"k_count", Type::Integer, "number of admissible powers"},
      {"l_max", Type::Integer, "search budget"},
      {"kernel", Type::Json, "kernel JSON {kind, omega | gamma | t0}"},
      {"t", Type::Number, "evaluation time"},
      {"ts", Type::Json, "evaluation-time grid JSON"},
      {"truncation", Type::Number, "kernel truncation length"},
      {"halfline", Type::Bool, "integrate from 0 instead of -infinity"},
      {"t0", Type::Number, "heat time"},
      {"x", Type::Number, "heat position"},
      {"xs", Type::Json, "heat position grid JSON"},
      {"window", Type::Number, "heat window half-width"},
      {"forcing", Type::Json, "forcing JSON {signal, lipschitz, nonlinearity}"},
      {"max_iter", Type::Integer, "iteration cap"},
      {"allow_noncontraction", Type::Bool, "iterate even when M1 >= 1"},
      {"u0", Type::Json, "initial trajectory: \"zero\" or {\"random\": seed, \"amplitude\": a}"},
      {"csv", Type::String, "CSV output path"},
      {"output", Type::String, "JSON report path (stdout when absent)"},
      {"error_output", Type::String, "error JSON path"},
  };
  return all;
}

const std::map<std::string, std::vector<std::string>>& command_keys() {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"signal-list", {}},
      {"defect", {"signal", "c", "tau", "grid"}},
      {"scan", {"signal", "c", "epsilon", "tau_max", "tau_step", "grid", "csv"}},
      {"recurrence", {"signal", "c", "alphas", "grid"}},
      {"semi", {"signal", "c", "epsilon", "p_candidates", "m_max", "grid"}},
      {"stepanov", {"signal", "c", "epsilon", "p", "nodes", "tau_max", "tau_step", "starts", "csv"}},
      {"spectrum", {"signal", "frequencies", "threshold", "horizons", "T0", "count", "tol", "step"}},
      {"mean",
       {"signal", "r", "horizons", "T0", "count", "tol", "step", "c", "epsilon", "tau_max", "tau_step", "grid",
        "n_count", "csv"}},
      {"orbit", {"phi", "target", "epsilon", "k_count", "l_max"}},
      {"convolve", {"kernel", "signal", "t", "ts", "truncation", "step", "halfline", "csv"}},
      {"heat", {"signal", "t0", "x", "xs", "window", "step", "csv"}},
      {"solve",
       {"forcing", "kernel", "grid", "tol", "max_iter", "allow_noncontraction", "truncation", "u0", "csv", "c",
        "alphas"}},
  };
  return keys;
}

using nlohmann::json;

// Typed access to a validated config.
class Config {
 public:
  explicit Config(const json& j) : j_(j) {}

  bool has(const std::string& k) const { return j_.contains(k); }
  const json& raw(const std::string& k) const {
    if (!has(k)) throw ValidationError("missing field '" + k + "'");
    return j_.at(k);
  }
  double number(const std::string& k) const {
    const auto& v = raw(k);
    if (!v.is_number()) throw ValidationError("field '" + k + "' must be a number");
    return v.get<double>();
  }
  double number(const std::string& k, double fallback) const { return has(k) ? number(k) : fallback; }
  std::optional<double> maybe_number(const std::string& k) const {
    return has(k) ? std::optional<double>(number(k)) : std::nullopt;
  }
  std::int64_t integer(const std::string& k) const {
    const auto& v = raw(k);
    if (!v.is_number_integer()) throw ValidationError("field '" + k + "' must be an integer");
    return v.get<std::int64_t>();
  }
  std::int64_t integer(const std::string& k, std::int64_t fallback) const { return has(k) ? integer(k) : fallback; }
  bool boolean(const std::string& k) const {
    if (!has(k)) return false;
    if (!raw(k).is_boolean()) throw ValidationError("field '" + k + "' must be a boolean");
    return raw(k).get<bool>();
  }
  std::string string(const std::string& k) const {
    if (!raw(k).is_string()) throw ValidationError("field '" + k + "' must be a string");
    return raw(k).get<std::string>();
  }
  std::vector<double> numbers(const std::string& k) const {
    const auto& v = raw(k);
    if (v.is_object()) {
      const Grid g = grid_from_json(v);
      std::vector<double> out;
      for (std::size_t i = 0; i < g.size(); ++i) out.push_back(g[i]);
      return out;
    }
    if (!v.is_array()) throw ValidationError("field '" + k + "' must be an array of numbers or a grid");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw ValidationError("field '" + k + "' must contain only numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  Signal signal(const std::string& k = "signal") const { return signal_from(raw(k)); }
  UnitComplex c() const { return unit_complex_from_json(raw("c")); }
  Grid grid(const std::string& k, const Signal& f) const { return has(k) ? grid_from_json(raw(k)) : default_grid(f); }
  std::vector<double> horizons() const {
    if (has("horizons")) return numbers("horizons");
    return doubling_horizons(number("T0", 1000.0), static_cast<int>(integer("count", 4)));
  }
  MeanOptions mean_options() const { return MeanOptions{maybe_number("step")}; }

  static Signal signal_from(const json& v) {
    if (v.is_string()) return make_builtin(v.get<std::string>());
    return signal_from_descriptor(v);
  }

 private:
  const json& j_;
};

void write_text(const Config& cfg, const std::string& content) {
  if (cfg.has("csv")) write_file_atomic(cfg.string("csv"), content);
}

json run_signal_list(const Config&) {
  json out = json::array();
  for (const auto& b : builtin_catalog())
    out.push_back({{"name", b.name}, {"defaults", b.defaults}, {"summary", b.summary}});
  return out;
}

json run_defect(const Config& cfg) {
  const Signal f = cfg.signal();
  const double tau = cfg.number("tau");
  const auto d = defect(f, tau, cfg.c(), cfg.grid("grid", f));
  json j = to_json(d);
  j["tau"] = tau;
  j["c"] = to_json(cfg.c());
  return j;
}

json run_scan(const Config& cfg) {
  const Signal f = cfg.signal();
  const auto r = scan_periods(f, cfg.c(), cfg.number("epsilon"), cfg.number("tau_max"), cfg.number("tau_step"),
                              cfg.grid("grid", f), ScanOptions{cfg.has("csv")});
  write_text(cfg, curve_csv(r.curve, "tau", "defect"));
  return to_json(r);
}

json run_recurrence(const Config& cfg) {
  const Signal f = cfg.signal();
  return to_json(recurrence_defects(f, cfg.c(), cfg.numbers("alphas"), cfg.grid("grid", f)));
}

json run_semi(const Config& cfg) {
  const Signal f = cfg.signal();
  const auto r = semi_c_check(f, cfg.c(), cfg.number("epsilon"), cfg.numbers("p_candidates"),
                              static_cast<int>(cfg.integer("m_max")), cfg.grid("grid", f));
  return {{"period", r.period ? json(*r.period) : json(nullptr)}, {"m_checked", r.m_checked}};
}

json run_stepanov(const Config& cfg) {
  const Signal f = cfg.signal();
  const StepanovParams params{cfg.number("p", 2.0), static_cast<int>(cfg.integer("nodes", 64))};
  const Grid starts = cfg.has("starts") ? grid_from_json(cfg.raw("starts")) : Grid(0.0, 100.0, 0.25);
  const auto r = stepanov_scan(f, cfg.c(), cfg.number("epsilon"), params, cfg.number("tau_max"),
                               cfg.number("tau_step"), starts, ScanOptions{cfg.has("csv")});
  write_text(cfg, curve_csv(r.curve, "tau", "defect"));
  json j = to_json(r);
  j["norm"] = stepanov_norm(f, params, starts);
  return j;
}

json run_spectrum(const Config& cfg) {
  const Signal f = cfg.signal();
  const auto lines = spectrum_scan(f, cfg.numbers("frequencies"), cfg.number("threshold", 1e-2), cfg.horizons(),
                                   cfg.number("tol", 1e-3), cfg.mean_options());
  return {{"lines", to_json(lines)}};
}

json run_mean(const Config& cfg) {
  const Signal f = cfg.signal();
  if (cfg.has("c")) {
    const auto c = cfg.c();
    const auto scan = scan_periods(f, c, cfg.number("epsilon"), cfg.number("tau_max"), cfg.number("tau_step"),
                                   cfg.grid("grid", f));
    const auto r = mean_zero_check(f, c, scan, static_cast<int>(cfg.integer("n_count", 32)), cfg.mean_options());
    write_text(cfg, curve_csv(r.curve, "T", "mean"));
    return to_json(r);
  }
  const auto m = bohr_coefficient(f, cfg.number("r", 0.0), cfg.horizons(), cfg.number("tol", 1e-3), cfg.mean_options());
  std::vector<std::pair<double, double>> curve;
  for (std::size_t i = 0; i < m.horizons.size(); ++i) curve.emplace_back(m.horizons[i], m.values[i].norm());
  write_text(cfg, curve_csv(curve, "T", "mean"));
  return to_json(m);
}

json run_orbit(const Config& cfg) {
  complex target(-1.0, 0.0);
  if (cfg.has("target")) {
    const auto& t = cfg.raw("target");
    if (!t.is_object()) throw ValidationError("target must be {re, im}");
    for (const auto& [k, v] : t.items())
      if (k != "re" && k != "im") throw ValidationError("unknown target field '" + k + "'");
    target = complex(t.value("re", 0.0), t.value("im", 0.0));
  }
  const auto o = orbit_approximants(cfg.number("phi"), target, cfg.number("epsilon"),
                                    static_cast<int>(cfg.integer("k_count", 10)),
                                    OrbitOptions{cfg.integer("l_max", 10'000'000)});
  return to_json(o);
}

json run_convolve(const Config& cfg) {
  const Kernel k = Kernel::from_json(cfg.raw("kernel"));
  const Signal f = cfg.signal();
  const double step = cfg.number("step", 1e-3);
  const bool halfline = cfg.boolean("halfline");
  std::vector<double> ts = cfg.has("ts") ? cfg.numbers("ts") : std::vector<double>{cfg.number("t")};
  std::vector<ConvolutionValue> values;
  if (halfline) {
    for (double t : ts) values.push_back(convolve_halfline(k, f, t, step));
  } else if (cfg.has("ts")) {
    values = convolve_grid(k, f, grid_from_json(cfg.raw("ts")), ConvolveOptions{cfg.maybe_number("truncation"), step});
  } else {
    values.push_back(convolve_line(k, f, ts.front(), ConvolveOptions{cfg.maybe_number("truncation"), step}));
  }
  std::vector<Vector> vs;
  json out = json::array();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    json v = to_json(values[i]);
    v["t"] = ts[i];
    out.push_back(v);
    vs.push_back(values[i].value);
  }
  write_text(cfg, values_csv(ts, vs));
  return {{"kernel", k.to_json()}, {"halfline", halfline}, {"values", out}};
}

json run_heat(const Config& cfg) {
  const Signal f = cfg.signal();
  const double t0 = cfg.number("t0");
  const HeatOptions opts{cfg.maybe_number("window"), cfg.maybe_number("step")};
  const std::vector<double> xs = cfg.has("xs") ? cfg.numbers("xs") : std::vector<double>{cfg.number("x")};
  std::vector<Vector> vs;
  json out = json::array();
  for (double x : xs) {
    const auto v = heat_solution(f, t0, x, opts);
    json j = to_json(v);
    j["x"] = x;
    out.push_back(j);
    vs.push_back(v.value);
  }
  write_text(cfg, values_csv(xs, vs));
  return {{"t0", t0}, {"values", out}};
}

Forcing forcing_from(const json& j) {
  if (!j.is_object()) throw ValidationError("forcing must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (k != "signal" && k != "lipschitz" && k != "nonlinearity") throw ValidationError("unknown forcing field '" + k + "'");
  if (!j.contains("signal")) throw ValidationError("forcing needs 'signal'");
  if (!j.contains("lipschitz") || !j.at("lipschitz").is_number()) throw ValidationError("forcing needs numeric 'lipschitz'");
  const std::string nl = j.contains("nonlinearity") ? j.at("nonlinearity").get<std::string>() : "sin-re";
  return make_forcing(Config::signal_from(j.at("signal")), nl, j.at("lipschitz").get<double>());
}

Trajectory initial_trajectory(const Config& cfg, const Grid& grid, Eigen::Index dim) {
  if (!cfg.has("u0") || cfg.raw("u0") == "zero") return constant_trajectory(grid, Vector::Zero(dim));
  const auto& u0 = cfg.raw("u0");
  if (!u0.is_object() || !u0.contains("random")) throw ValidationError("u0 must be \"zero\" or {\"random\": seed}");
  for (const auto& [k, v] : u0.items())
    if (k != "random" && k != "amplitude") throw ValidationError("unknown u0 field '" + k + "'");
  return random_trajectory(grid, dim, u0.value("amplitude", 1.0), u0.at("random").get<std::uint64_t>());
}

json run_solve(const Config& cfg, const std::function<void(const json&)>& emit) {
  const Forcing forcing = forcing_from(cfg.raw("forcing"));
  const Kernel k = Kernel::from_json(cfg.raw("kernel"));
  const Grid grid = grid_from_json(cfg.raw("grid"));
  const Signal f = Config::signal_from(cfg.raw("forcing").at("signal"));
  check_lipschitz(forcing, f.dim());
  SolveOptions opts;
  opts.tol = cfg.number("tol", 1e-8);
  opts.max_iter = static_cast<int>(cfg.integer("max_iter", 200));
  opts.allow_noncontraction = cfg.boolean("allow_noncontraction");
  opts.truncation = cfg.maybe_number("truncation");
  const double M1 = contraction_estimate(forcing.lipschitz, k, 1);
  const Trajectory u = fixed_point_solve(forcing, k, initial_trajectory(cfg, grid, f.dim()), opts);
  json report = solve_report(u, M1);
  if (cfg.has("alphas"))
    report["recurrence"] = to_json(recurrence_of_solution(u, cfg.has("c") ? cfg.c() : UnitComplex::one(), cfg.numbers("alphas")));
  write_text(cfg, trajectory_csv(u));
  if (!u.converged) {
    emit(report);
    std::ostringstream os;
    os << "no convergence within " << u.iterations << " iterations (residual " << u.residual << ")";
    throw NotConvergedError(os.str());
  }
  return report;
}

void validate(const json& config) {
  if (!config.is_object()) throw ValidationError("config must be a JSON object");
  if (!config.contains("command") || !config.at("command").is_string())
    throw ValidationError("config needs a 'command' string");
  const auto cmd = config.at("command").get<std::string>();
  const auto it = command_keys().find(cmd);
  if (it == command_keys().end()) throw ValidationError("unknown command '" + cmd + "'");
  std::set<std::string> allowed(it->second.begin(), it->second.end());
  allowed.insert({"command", "output", "error_output"});
  for (const auto& [k, v] : config.items())
    if (!allowed.count(k)) throw ValidationError("unknown field '" + k + "' for command '" + cmd + "'");
}

json flag_value(const Field& f, const std::string& text) {
  switch (f.type) {
    case Type::String: return text;
    case Type::Bool: return true;
    case Type::SignalSpec:
      if (!text.empty() && text.front() == '{') return json::parse(text);
      return text;
    case Type::Number:
    case Type::Integer:
    case Type::Json: {
      json v = json::parse(text, nullptr, false);
      if (v.is_discarded() && f.type == Type::Number) {
        char* end = nullptr;
        const double x = std::strtod(text.c_str(), &end);
        if (!text.empty() && end == text.c_str() + text.size()) v = x;
      }
      if (v.is_discarded()) throw ValidationError("flag --" + f.key + " is not valid JSON: " + text);
      if (f.type == Type::Number && !v.is_number()) throw ValidationError("flag --" + f.key + " must be a number");
      if (f.type == Type::Integer && !v.is_number_integer())
        throw ValidationError("flag --" + f.key + " must be an integer");
      return v;
    }
  }
  return nullptr;
}

json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config '" + path + "'");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ValidationError("config '" + path + "' is not a JSON object");
  return j;
}

std::string flag_name(const std::string& key) {
  std::string out = key;
  for (auto& ch : out)
    if (ch == '_') ch = '-';
  return "--" + out;
}

const Field& field(const std::string& key) {
  for (const auto& f : fields())
    if (f.key == key) return f;
  throw std::logic_error("unregistered field " + key);
}

int report_error(const std::string& kind, const std::string& category, const std::string& message, int code,
                 const json& config, std::ostream& err) {
  const json e{{"error", {{"kind", kind}, {"category", category}, {"message", message}, {"exit_code", code}}}};
  err << e.dump() << '\n';
  if (config.is_object() && config.contains("error_output") && config.at("error_output").is_string()) {
    try {
      write_json(config.at("error_output").get<std::string>(), e);
    } catch (const std::exception&) {
    }
  }
  return code;
}

const std::map<std::string, std::string>& command_help() {
  static const std::map<std::string, std::string> help{
      {"signal-list", "list builtin signals and their default parameters"},
      {"defect", "sup-norm defect of one shift tau"},
      {"scan", "scan shifts for (epsilon, c)-periods"},
      {"recurrence", "defects along a recurrence sequence"},
      {"semi", "search for a semi-c-period among candidates"},
      {"stepanov", "scan shifts under the Stepanov window norm"},
      {"spectrum", "Bohr coefficients over a frequency list"},
      {"mean", "Cesaro or Bohr mean; with c, the mean-zero check"},
      {"orbit", "powers of exp(i pi phi) near a target"},
      {"convolve", "convolve a signal with a causal kernel"},
      {"heat", "heat-semigroup solution at time t0"},
      {"solve", "fixed-point solve of the integral equation"},
  };
  return help;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"signal-list", "defect",   "scan",     "recurrence",
                                              "semi",        "stepanov", "spectrum", "mean",
                                              "orbit",       "convolve", "heat",     "solve"};
  return names;
}

int run(const json& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    const Config cfg(config);
    auto emit = [&](const json& report) {
      if (cfg.has("output"))
        write_json(cfg.string("output"), report);
      else
        out << report.dump(2) << '\n';
    };
    const auto cmd = config.at("command").get<std::string>();
    json report;
    if (cmd == "signal-list") report = run_signal_list(cfg);
    else if (cmd == "defect") report = run_defect(cfg);
    else if (cmd == "scan") report = run_scan(cfg);
    else if (cmd == "recurrence") report = run_recurrence(cfg);
    else if (cmd == "semi") report = run_semi(cfg);
    else if (cmd == "stepanov") report = run_stepanov(cfg);
    else if (cmd == "spectrum") report = run_spectrum(cfg);
    else if (cmd == "mean") report = run_mean(cfg);
    else if (cmd == "orbit") report = run_orbit(cfg);
    else if (cmd == "convolve") report = run_convolve(cfg);
    else if (cmd == "heat") report = run_heat(cfg);
    else report = run_solve(cfg, emit);
    emit(report);
    return 0;
  } catch (const Error& e) {
    const bool numerical = e.category() == ErrorCategory::Numerical;
    return report_error(e.kind(), numerical ? "numerical" : "validation", e.what(), numerical ? 3 : 2, config, err);
  } catch (const nlohmann::json::exception& e) {
    return report_error("ValidationError", "validation", e.what(), 2, config, err);
  } catch (const std::exception& e) {
    return report_error("InternalError", "internal", e.what(), 1, config, err);
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for c-almost periodic signals"};
  app.require_subcommand(0, 1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; its 'command' selects the subcommand");

  std::map<std::string, std::string> sub_config;
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::map<std::string, bool>> flags;
  for (const auto& [cmd, keys] : command_keys()) {
    auto* sub = app.add_subcommand(cmd, command_help().at(cmd));
    sub->add_option("--config", sub_config[cmd], "JSON config file; flags override its fields");
    for (const auto& key : keys) {
      const Field& f = field(key);
      if (f.type == Type::Bool)
        sub->add_flag(flag_name(key), flags[cmd][key], f.help);
      else
        sub->add_option(flag_name(key), values[cmd][key], f.help);
    }
    for (const char* key : {"output", "error_output"}) sub->add_option(flag_name(key), values[cmd][key], field(key).help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    return report_error("ValidationError", "validation", e.what(), 2, json(), err);
  }

  json config = json::object();
  try {
    const auto subs = app.get_subcommands();
    if (subs.empty()) {
      if (config_path.empty()) {
        out << app.help();
        return 0;
      }
      config = read_config_file(config_path);
      return run(config, out, err);
    }
    const std::string cmd = subs.front()->get_name();
    const std::string path = !sub_config[cmd].empty() ? sub_config[cmd] : config_path;
    if (!path.empty()) config = read_config_file(path);
    if (config.contains("command") && config.at("command") != cmd)
      throw ValidationError("config command '" + config.at("command").dump() + "' does not match '" + cmd + "'");
    config["command"] = cmd;
    for (const auto& [key, text] : values[cmd]) {
      if (subs.front()->count(flag_name(key)) > 0) config[key] = flag_value(field(key), text);
    }
    for (const auto& [key, set] : flags[cmd])
      if (set) config[key] = true;
  } catch (const Error& e) {
    return report_error(e.kind(), "validation", e.what(), 2, config, err);
  } catch (const std::exception& e) {
    return report_error("ValidationError", "validation", e.what(), 2, config, err);
  }
  return run(config, out, err);
}

}  // namespace cperiod::cli
