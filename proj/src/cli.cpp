#include "fmaxwell/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fmaxwell/analysis.hpp"
#include "fmaxwell/errors.hpp"
#include "fmaxwell/fitting.hpp"
#include "fmaxwell/gamma.hpp"
#include "fmaxwell/hadamard.hpp"
#include "fmaxwell/mittag_leffler.hpp"
#include "fmaxwell/models.hpp"
#include "fmaxwell/text_io.hpp"

namespace fmaxwell::cli {
namespace {

using json = nlohmann::ordered_json;

// Malformed flag values that CLI11 itself cannot catch.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) throw UsageError("bad number '" + text + "' in " + what);
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string::npos ? pos : pos - start));
    if (pos == std::string::npos) return parts;
    start = pos + 1;
  }
}

// "min:max:count"
GridSpec parse_grid(const std::string& text, GridKind kind) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("grid '" + text + "' is not of the form min:max:count");
  GridSpec g;
  g.kind = kind;
  g.t_min = parse_double(parts[0], "grid");
  g.t_max = parse_double(parts[1], "grid");
  const double count = parse_double(parts[2], "grid");
  if (!(count >= 0.0) || count != std::floor(count)) throw UsageError("grid count must be a whole number");
  g.n_points = static_cast<std::size_t>(count);
  return g;
}

struct GridFlags {
  std::string linear;
  std::string log;

  void add_to(CLI::App* app) {
    auto* lin = app->add_option("--linear", linear, "uniform grid min:max:count");
    auto* lg = app->add_option("--log", log, "logarithmic grid min:max:count");
    lin->excludes(lg);
  }

  std::optional<GridSpec> grid() const {
    if (!linear.empty()) return parse_grid(linear, GridKind::Linear);
    if (!log.empty()) return parse_grid(log, GridKind::Logarithmic);
    return std::nullopt;
  }
};

struct ScenarioFlags {
  RelaxationScenario sc;

  void add_to(CLI::App* app) {
    app->add_option("--E", sc.E, "elastic modulus")->capture_default_str();
    app->add_option("--theta", sc.theta, "strain-hardening coefficient")->capture_default_str();
    app->add_option("--eta0", sc.eta0, "initial viscosity")->capture_default_str();
    app->add_option("--sigma0", sc.sigma0, "initial stress")->capture_default_str();
    app->add_option("--epsilon0", sc.epsilon0, "held strain (metadata)")->capture_default_str();
  }
};

struct OutputFlags {
  OutputSpec spec;
  std::string format = "kv";

  void add_to(CLI::App* app, bool scalar) {
    app->add_option("--precision", spec.precision, "significant digits (6..17)")->capture_default_str();
    app->add_option("--output,-o", spec.destination, "output file, '-' for stdout")->capture_default_str();
    if (scalar) {
      app->add_option("--format", format, "kv (key=value lines) or json")
          ->check(CLI::IsMember({"kv", "json"}))
          ->capture_default_str();
    }
  }
};

// Writes to the --output file or the caller's stream.
class Sink {
 public:
  Sink(const OutputSpec& spec, std::ostream& fallback) {
    validate(spec);
    if (spec.destination.empty() || spec.destination == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(spec.destination);
      if (!*file_) throw ValidationError("cannot open output file '" + spec.destination + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

void emit_scalars(const OutputFlags& flags, const KeyValues& kv, const json& structured, std::ostream& out) {
  Sink sink(flags.spec, out);
  if (flags.format == "json") {
    sink.get() << structured.dump(2) << '\n';
  } else {
    write_key_values(sink.get(), kv);
  }
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

ModelKind parse_model(const std::string& name) {
  for (ModelKind k : {ModelKind::Modified, ModelKind::ModifiedNu1, ModelKind::Asymptotic,
                      ModelKind::ClassicalFractional}) {
    if (to_string(k) == name) return k;
  }
  throw UsageError("unknown model '" + name + "'");
}

// ---------------------------------------------------------------- ml

struct MlCommand {
  MLQuery q;
  OutputFlags output;

  void add_to(CLI::App& app, std::function<void()>& action, std::ostream& out) {
    auto* cmd = app.add_subcommand("ml", "evaluate the Mittag-Leffler function E_{alpha,beta}(x), x <= 0");
    cmd->add_option("--alpha", q.alpha, "order in (0, 1]")->required();
    cmd->add_option("--beta", q.beta, "second parameter (> 0)")->capture_default_str();
    cmd->add_option("--x", q.x, "argument, <= 0")->required();
    cmd->add_option("--tol", q.tol, "absolute tolerance")->capture_default_str();
    output.add_to(cmd, true);
    cmd->callback([this, &action, &out] { action = [this, &out] { execute(out); }; });
  }

  void execute(std::ostream& out) const {
    const MLResult r = ml_eval(q);
    const int p = output.spec.precision;
    KeyValues kv{{"alpha", format_number(q.alpha, p)},
                 {"beta", format_number(q.beta, p)},
                 {"x", format_number(q.x, p)},
                 {"value", format_number(r.value, p)},
                 {"regime", std::string(to_string(r.regime))},
                 {"est_error", format_number(r.est_error, p)}};
    json j{{"alpha", q.alpha}, {"beta", q.beta},           {"x", q.x},
           {"value", r.value}, {"regime", to_string(r.regime)}, {"est_error", r.est_error}};
    emit_scalars(output, kv, j, out);
  }
};

// ---------------------------------------------------------------- relax

struct RelaxCommand {
  std::vector<double> nus;
  std::string model = "modified";
  GridFlags grid;
  ScenarioFlags scenario;
  OutputFlags output;

  void add_to(CLI::App& app, std::function<void()>& action, std::ostream& out) {
    auto* cmd = app.add_subcommand("relax", "sample relaxation curves as CSV, one column per order");
    cmd->add_option("--nu", nus, "comma-separated orders")->required()->delimiter(',');
    cmd->add_option("--model", model, "modified, nu1, asymptotic or classical")->capture_default_str();
    grid.add_to(cmd);
    scenario.add_to(cmd);
    output.add_to(cmd, false);
    cmd->callback([this, &action, &out] { action = [this, &out] { execute(out); }; });
  }

  void execute(std::ostream& out) const {
    const ModelKind kind = parse_model(model);
    const auto g_opt = grid.grid();
    if (!g_opt) throw UsageError("relax needs --linear or --log");
    const GridSpec& g = *g_opt;
    CsvTable table;
    table.header.push_back("t");
    table.columns.push_back(grid_nodes(g));
    for (double nu : nus) {
      const SampledCurve curve = sample_curve({kind, nu, scenario.sc}, g);
      table.header.push_back("nu=" + format_number(nu, 12));
      table.columns.push_back(curve.values);
    }
    Sink sink(output.spec, out);
    write_csv(sink.get(), table, output.spec.precision);
  }
};

// ---------------------------------------------------------------- op

struct OpCommand {
  std::string function;
  double nu = 0.5;
  double t = 1.0;
  ScenarioFlags scenario;
  QuadratureConfig quad{4096, 1, 1e-6, 3};
  OutputFlags output;

  void add_to(CLI::App& app, std::function<void()>& action, std::ostream& out) {
    auto* cmd = app.add_subcommand("op", "apply the Hadamard-type operator to const:c, logpow:beta or eigen");
    cmd->add_option("--f", function, "const:<c> | logpow:<beta> | eigen")->required();
    cmd->add_option("--nu", nu, "order in (0, 1]")->capture_default_str();
    cmd->add_option("--t", t, "evaluation time")->capture_default_str();
    scenario.add_to(cmd);
    cmd->add_option("--nodes", quad.n_nodes, "L1 grid intervals")->capture_default_str();
    cmd->add_option("--levels", quad.refinement_levels, "refinement levels (grid doublings + 1)")
        ->capture_default_str();
    cmd->add_option("--quad-tol", quad.tol, "agreement required between refinement levels")->capture_default_str();
    cmd->add_option("--corrections", quad.start_corrections, "L1 starting corrections (0 = plain L1)")
        ->capture_default_str();
    output.add_to(cmd, true);
    cmd->callback([this, &action, &out] { action = [this, &out] { execute(out); }; });
  }

  void execute(std::ostream& out) const {
    const OperatorParams p = scenario.sc.with_order(nu);
    RealFunction f;
    double reference = 0.0;
    std::string kind;
    const auto colon = function.find(':');
    const std::string name = function.substr(0, colon);
    if (name == "const") {
      if (colon == std::string::npos) throw UsageError("const needs a value, e.g. const:5");
      const double c = parse_double(function.substr(colon + 1), "--f");
      f = [c](double) { return c; };
      reference = 0.0;
    } else if (name == "logpow") {
      if (colon == std::string::npos) throw UsageError("logpow needs an exponent, e.g. logpow:1");
      const double beta = parse_double(function.substr(colon + 1), "--f");
      f = [beta, p](double tau) { return std::pow(log_viscosity(tau, p), beta); };
      reference = apply_to_log_power(beta, t, p);
    } else if (name == "eigen" && colon == std::string::npos) {
      RelaxationScenario unit = scenario.sc;
      unit.sigma0 = 1.0;
      const double order = nu;
      f = [unit, order](double tau) { return stress_relaxation(tau, order, unit); };
      reference = -f(t);
    } else {
      throw UsageError("unknown operator argument '" + function + "'");
    }
    const double value = apply_operator(f, t, p, quad);
    const double abs_error = std::fabs(value - reference);
    const int prec = output.spec.precision;
    KeyValues kv{{"function", function},
                 {"nu", format_number(nu, prec)},
                 {"t", format_number(t, prec)},
                 {"value", format_number(value, prec)},
                 {"reference", format_number(reference, prec)},
                 {"abs_error", format_number(abs_error, prec)}};
    json j{{"function", function}, {"nu", nu},           {"t", t},
           {"value", value},       {"reference", reference}, {"abs_error", abs_error}};
    emit_scalars(output, kv, j, out);
  }
};

// ---------------------------------------------------------------- asym

struct AsymCommand {
  double nu = 0.5;
  std::vector<double> times;
  GridFlags grid;
  ScenarioFlags scenario;
  OutputFlags output;

  void add_to(CLI::App& app, std::function<void()>& action, std::ostream& out) {
    auto* cmd = app.add_subcommand("asym", "exact response against its leading asymptotic term, as CSV");
    cmd->add_option("--nu", nu, "order in (0, 1)")->required();
    auto* t_opt = cmd->add_option("--times", times, "comma-separated times")->delimiter(',');
    grid.add_to(cmd);
    scenario.add_to(cmd);
    output.add_to(cmd, false);
    (void)t_opt;
    cmd->callback([this, &action, &out] { action = [this, &out] { execute(out); }; });
  }

  void execute(std::ostream& out) const {
    std::vector<double> points = times;
    if (const auto g = grid.grid()) {
      const auto nodes = grid_nodes(*g);
      points.insert(points.end(), nodes.begin(), nodes.end());
    }
    if (points.empty()) throw UsageError("asym needs --times or a grid");
    const auto rows = asymptotic_matching(nu, scenario.sc, points);
    CsvTable table{{"t", "exact", "asymptotic", "rel_error"}, std::vector<std::vector<double>>(4)};
    for (const MatchRow& r : rows) {
      table.columns[0].push_back(r.t);
      table.columns[1].push_back(r.exact);
      table.columns[2].push_back(r.asymptotic);
      table.columns[3].push_back(r.rel_error);
    }
    Sink sink(output.spec, out);
    write_csv(sink.get(), table, output.spec.precision);
  }
};

// ---------------------------------------------------------------- probe

struct ProbeCommand {
  std::vector<double> nus;
  double t = 1000.0;
  ScenarioFlags scenario;
  OutputFlags output;

  void add_to(CLI::App& app, std::function<void()>& action, std::ostream& out) {
    auto* cmd = app.add_subcommand("probe", "exact vs asymptotic stress as nu approaches 1, as CSV");
    cmd->add_option("--nu", nus, "comma-separated orders in (0, 1]")->required()->delimiter(',');
    cmd->add_option("--t", t, "evaluation time")->capture_default_str();
    scenario.add_to(cmd);
    output.add_to(cmd, false);
    cmd->callback([this, &action, &out] { action = [this, &out] { execute(out); }; });
  }

  void execute(std::ostream& out) const {
    const auto rows = singular_limit_probe(nus, t, scenario.sc);
    CsvTable table{{"nu", "exact", "asymptotic", "amplitude", "gamma_one_minus_nu"},
                   std::vector<std::vector<double>>(5)};
    for (const ProbeRow& r : rows) {
      table.columns[0].push_back(r.nu);
      table.columns[1].push_back(r.exact);
      table.columns[2].push_back(r.asymptotic);
      table.columns[3].push_back(r.amplitude);
      table.columns[4].push_back(r.gamma_one_minus);
    }
    Sink sink(output.spec, out);
    write_csv(sink.get(), table, output.spec.precision);
  }
};

// ---------------------------------------------------------------- cmcheck

struct CmCheckCommand {
  double nu = 0.5;
  std::string model = "modified";
  int max_order = 4;
  double tol = 1e-10;
  GridFlags grid;
  ScenarioFlags scenario;
  OutputFlags output;

  void add_to(CLI::App& app, std::function<void()>& action, std::ostream& out) {
    auto* cmd = app.add_subcommand("cmcheck", "finite-difference complete-monotonicity check");
    cmd->add_option("--nu", nu, "order in (0, 1]")->capture_default_str();
    cmd->add_option("--model", model, "modified, nu1, asymptotic or classical")->capture_default_str();
    cmd->add_option("--max-order", max_order, "highest difference order (1..6)")->capture_default_str();
    cmd->add_option("--tol", tol, "allowed wrong-signed magnitude")->capture_default_str();
    grid.add_to(cmd);
    scenario.add_to(cmd);
    output.add_to(cmd, true);
    cmd->callback([this, &action, &out] { action = [this, &out] { execute(out); }; });
  }

  void execute(std::ostream& out) const {
    const ModelSpec spec{parse_model(model), nu, scenario.sc};
    const GridSpec g = grid.grid().value_or(parse_grid("0:10:200", GridKind::Linear));
    const CMReport report =
        check_complete_monotonicity([&spec](double t) { return evaluate_model(spec, t); }, g, max_order, tol);
    const int p = output.spec.precision;
    KeyValues kv{{"model", model}, {"nu", format_number(nu, p)}, {"max_order", std::to_string(max_order)}};
    json j{{"model", model}, {"nu", nu}, {"max_order", max_order}, {"orders", json::array()}};
    for (int m = 1; m <= report.max_order_checked; ++m) {
      const auto i = static_cast<std::size_t>(m - 1);
      const std::string prefix = "order_" + std::to_string(m);
      kv.emplace_back(prefix + "_passed", bool_text(report.passed[i]));
      kv.emplace_back(prefix + "_worst_violation", format_number(report.worst_violation[i], p));
      j["orders"].push_back(
          {{"order", m}, {"passed", static_cast<bool>(report.passed[i])}, {"worst_violation", report.worst_violation[i]}});
    }
    kv.emplace_back("all_passed", bool_text(report.all_passed()));
    j["all_passed"] = report.all_passed();
    emit_scalars(output, kv, j, out);
  }
};

// ---------------------------------------------------------------- fit

struct FitCommand {
  std::string input;
  std::vector<std::string> free{"nu"};
  std::vector<std::string> bounds;
  std::vector<std::string> guesses;
  FitConfig cfg;
  OutputFlags output;

  void add_to(CLI::App& app, std::function<void()>& action, std::ostream& out, int& exit_code) {
    auto* cmd = app.add_subcommand("fit", "least-squares fit of the relaxation model to t,sigma data");
    cmd->add_option("--input,-i", input, "delimited text file with t and sigma columns")->required();
    cmd->add_option("--free", free, "free parameters among nu,E,theta,eta0,sigma0")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--bounds", bounds, "name=lower:upper, comma-separated")->delimiter(',');
    cmd->add_option("--guess", guesses, "name=value initial or fixed values, comma-separated")->delimiter(',');
    cmd->add_option("--max-iters", cfg.max_iters, "iteration cap")->capture_default_str();
    cmd->add_option("--tol", cfg.tol, "relative simplex spread for convergence")->capture_default_str();
    cmd->add_flag("--allow-degenerate", cfg.allow_degenerate, "permit fitting E, theta and eta0 together");
    output.add_to(cmd, true);
    cmd->callback(
        [this, &action, &out, &exit_code] { action = [this, &out, &exit_code] { exit_code = execute(out); }; });
  }

  static Param param_named(const std::string& name) {
    const auto p = param_from_string(name);
    if (!p) throw UsageError("unknown parameter '" + name + "'");
    return *p;
  }

  static std::pair<std::string, std::string> key_value(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw UsageError("expected name=value, got '" + text + "'");
    return {text.substr(0, eq), text.substr(eq + 1)};
  }

  int execute(std::ostream& out) {
    FitConfig c = cfg;
    c.free_params.clear();
    for (const auto& name : free) c.free_params.push_back(param_named(name));
    for (const auto& text : bounds) {
      const auto [name, range] = key_value(text);
      const auto parts = split(range, ':');
      if (parts.size() != 2) throw UsageError("bounds must look like name=lower:upper");
      c.bounds[static_cast<std::size_t>(param_named(name))] =
          Bounds{parse_double(parts[0], "--bounds"), parse_double(parts[1], "--bounds")};
    }
    for (const auto& text : guesses) {
      const auto [name, value] = key_value(text);
      c.initial[param_named(name)] = parse_double(value, "--guess");
    }

    const Dataset d = load_dataset(std::filesystem::path(input));
    const FitResult r = fit_relaxation(d, c);

    const int p = output.spec.precision;
    KeyValues kv{{"source", d.source},
                 {"samples", std::to_string(d.size())},
                 {"converged", bool_text(r.converged)},
                 {"iterations", std::to_string(r.iterations)},
                 {"residual", format_number(r.residual, p)}};
    json j{{"source", d.source},
           {"samples", d.size()},
           {"converged", r.converged},
           {"iterations", r.iterations},
           {"residual", r.residual},
           {"free", json::array()},
           {"estimates", json::object()}};
    std::string free_list;
    for (Param fp : r.free_params) {
      free_list += (free_list.empty() ? "" : ",") + std::string(to_string(fp));
      j["free"].push_back(to_string(fp));
    }
    kv.emplace_back("free", free_list);
    for (std::size_t i = 0; i < kParamCount; ++i) {
      const auto param = static_cast<Param>(i);
      kv.emplace_back(std::string(to_string(param)), format_number(r.estimates[param], p));
      j["estimates"][std::string(to_string(param))] = r.estimates[param];
    }
    emit_scalars(output, kv, j, out);
    return r.converged ? kExitOk : kExitNumerical;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modified fractional Maxwell model: Mittag-Leffler evaluation, Hadamard-type operator, "
               "relaxation curves, diagnostics and fitting"};
  app.name("fmaxwell");
  app.require_subcommand(1);

  std::function<void()> action;
  int exit_code = kExitOk;
  MlCommand ml;
  RelaxCommand relax;
  OpCommand op;
  AsymCommand asym;
  ProbeCommand probe;
  CmCheckCommand cmcheck;
  FitCommand fit;
  ml.add_to(app, action, out);
  relax.add_to(app, action, out);
  op.add_to(app, action, out);
  asym.add_to(app, action, out);
  probe.add_to(app, action, out);
  cmcheck.add_to(app, action, out);
  fit.add_to(app, action, out, exit_code);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (action) action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return exit_code;
}

}  // namespace fmaxwell::cli
