#include "morrey_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "morrey/errors.hpp"

namespace morrey::cli {

using nlohmann::json;

namespace {

std::string exponent_text(const json& v, const char* key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return format_double(v.get<double>());
  throw Error(std::string("config field '") + key + "' must be a number or a string");
}

void read_oracle(const json& j, OracleConfig& o) {
  o.annuli_count = j.value("annuli_count", o.annuli_count);
  o.restarts = j.value("restarts", o.restarts);
  o.ascent_iters = j.value("ascent_iters", o.ascent_iters);
  o.refine_levels = j.value("refine_levels", o.refine_levels);
  o.seed = j.value("seed", o.seed);
  if (j.contains("breakpoint_span")) {
    const auto& s = j.at("breakpoint_span");
    if (!s.is_array() || s.size() != 2) throw Error("oracle.breakpoint_span must be [lo, hi]");
    o.span_lo = s[0].get<double>();
    o.span_hi = s[1].get<double>();
  }
}

std::string scaled_expression(const std::string& expr, double lambda) {
  return "(" + expr + ")*(" + format_double(lambda) + ")";
}

json samples_json(const std::vector<Sample>& s) {
  json out = json::array();
  for (const Sample& x : s) out.push_back({number_json(x.t), number_json(x.value)});
  return out;
}

json check_json(const HypothesisReport& h) {
  if (const auto* c = std::get_if<ClassReport>(&h)) {
    return {{"name", c->name},
            {"type", "class"},
            {"member", std::string(to_string(c->member))},
            {"witnesses", samples_json(c->witnesses)},
            {"notes", c->notes}};
  }
  const auto& q = std::get<QuasiconcavityReport>(h);
  json limits = json::array();
  for (double x : q.limit_diagnostics) limits.push_back(number_json(x));
  return {{"name", q.name},
          {"type", "quasiconcavity"},
          {"quasiconcave", std::string(to_string(q.is_U_quasiconcave))},
          {"nondegenerate", std::string(to_string(q.is_nondegenerate))},
          {"limits", limits},
          {"witnesses", samples_json(q.witnesses)},
          {"notes", q.notes}};
}

std::string check_line(const HypothesisReport& h) {
  if (const auto* c = std::get_if<ClassReport>(&h)) {
    std::string s = "[" + std::string(to_string(c->member)) + "] " + c->name;
    if (!c->notes.empty()) s += " (" + c->notes + ")";
    return s;
  }
  const auto& q = std::get<QuasiconcavityReport>(h);
  std::string s = "[" + std::string(to_string(q.is_U_quasiconcave)) + "/" +
                  std::string(to_string(q.is_nondegenerate)) + "] " + q.name;
  if (!q.notes.empty()) s += " (" + q.notes + ")";
  return s;
}

std::string text(double x) { return std::isnan(x) ? "nan" : format_double(x); }

json budget_json(const OracleConfig& o) {
  return {{"annuli_count", o.annuli_count},
          {"restarts", o.restarts},
          {"ascent_iters", o.ascent_iters},
          {"refine_levels", o.refine_levels},
          {"seed", o.seed},
          {"breakpoint_span", {o.span_lo, o.span_hi}}};
}

void print_report(std::ostream& out, const EstimateReport& r) {
  out << "regime: " << to_string(r.regime) << "\n";
  out << "value: " << (r.value ? text(*r.value) : "none") << "\n";
  if (!r.terms.empty()) {
    out << "terms:\n";
    for (const Term& t : r.terms) out << "  " << t.name << " = " << text(t.value) << "\n";
  }
  if (!r.hypothesis_checks.empty()) {
    out << "checks:\n";
    for (const auto& h : r.hypothesis_checks) out << "  " << check_line(h) << "\n";
  }
  if (r.oracle_lower) out << "oracle_lower: " << text(*r.oracle_lower) << "\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  if (!r.explanation.empty()) out << "explanation: " << r.explanation << "\n";
}

EstimateOptions options_of(const ProblemConfig& cfg) {
  EstimateOptions o;
  o.force = cfg.force;
  return o;
}

SweepRow sweep_point(const ProblemConfig& base, const std::string& axis, double value, bool with_oracle,
                     const EstimatorFn& estimator) {
  SweepRow row;
  row.axis_value = value;
  try {
    const ProblemConfig cfg = with_axis(base, axis, value);
    const ParamQuadruple pq = cfg.params();
    const RegimeTag tag = classify(pq);
    row.regime = std::string(to_string(tag));
    if (!has_formula(tag)) return row;
    const RadialProblem prob = cfg.problem();
    const EstimateReport r = estimator(prob, cfg.quadrature, options_of(cfg));
    row.regime = std::string(to_string(r.regime));
    row.estimate = r.value;
    if (with_oracle) row.oracle_lower = maximize_ratio(prob, cfg.oracle, cfg.quadrature).lower_bound;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

// ---------------------------------------------------------------------------
// ProblemConfig

ProblemConfig ProblemConfig::from_json(const json& j) {
  if (!j.is_object()) throw Error("config must be a JSON object");
  ProblemConfig c;
  c.n = j.value("n", c.n);
  for (auto [key, field] : {std::pair{"p1", &c.p1}, {"p2", &c.p2}, {"th1", &c.th1}, {"th2", &c.th2}}) {
    if (!j.contains(key)) throw Error(std::string("config is missing '") + key + "'");
    *field = exponent_text(j.at(key), key);
  }
  for (auto [key, field] :
       {std::pair{"omega1", &c.omega1}, {"omega2", &c.omega2}, {"v1", &c.v1}, {"v2", &c.v2}}) {
    if (j.contains(key)) *field = exponent_text(j.at(key), key);
  }
  QuadratureConfig& q = c.quadrature;
  q.rel_tol = j.value("rel_tol", q.rel_tol);
  q.abs_tol = j.value("abs_tol", q.abs_tol);
  q.max_subdivisions = j.value("max_subdivisions", q.max_subdivisions);
  q.grid_points_per_decade = j.value("grid_points_per_decade", q.grid_points_per_decade);
  q.sup_rel_tol = j.value("sup_rel_tol", q.sup_rel_tol);
  if (j.contains("oracle")) read_oracle(j.at("oracle"), c.oracle);
  c.slack = j.value("slack", c.slack);
  c.force = j.value("force", c.force);
  return c;
}

ProblemConfig ProblemConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("config '" + path + "' is not valid JSON: " + e.what());
  }
  return from_json(j);
}

json ProblemConfig::to_json() const {
  return {{"n", n},
          {"p1", p1},
          {"p2", p2},
          {"th1", th1},
          {"th2", th2},
          {"omega1", omega1},
          {"omega2", omega2},
          {"v1", v1},
          {"v2", v2},
          {"rel_tol", quadrature.rel_tol},
          {"abs_tol", quadrature.abs_tol},
          {"max_subdivisions", quadrature.max_subdivisions},
          {"grid_points_per_decade", quadrature.grid_points_per_decade},
          {"sup_rel_tol", quadrature.sup_rel_tol},
          {"oracle", budget_json(oracle)},
          {"slack", slack},
          {"force", force}};
}

ParamQuadruple ProblemConfig::params() const {
  if (n < 1) throw DomainError("dimension n must be >= 1");
  return ParamQuadruple{parse_exponent(p1), parse_exponent(p2), parse_exponent(th1), parse_exponent(th2), n};
}

RadialProblem ProblemConfig::problem() const {
  return RadialProblem::radial(params(), parse_weight(omega1), parse_weight(omega2), parse_weight(v1),
                               parse_weight(v2));
}

// ---------------------------------------------------------------------------
// Reports

json number_json(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json report_to_json(const EstimateReport& r, const std::optional<OracleConfig>& budget) {
  json terms = json::object();
  for (const Term& t : r.terms) terms[t.name] = number_json(t.value);
  json checks = json::array();
  for (const auto& h : r.hypothesis_checks) checks.push_back(check_json(h));
  json oracle = {{"lower_bound", r.oracle_lower ? number_json(*r.oracle_lower) : json(nullptr)},
                 {"budget", budget ? budget_json(*budget) : json(nullptr)}};
  return {{"regime", std::string(to_string(r.regime))},
          {"value", r.value ? number_json(*r.value) : json(nullptr)},
          {"terms", terms},
          {"checks", checks},
          {"oracle", oracle},
          {"warnings", r.warnings},
          {"explanation", r.explanation},
          {"hypotheses_verified", r.hypotheses_verified}};
}

SandwichReport sandwich(const RadialProblem& prob, const ProblemConfig& cfg, const EstimatorFn& estimator) {
  const EstimateReport r = estimator(prob, cfg.quadrature, options_of(cfg));
  if (!r.value) throw Error("regime " + std::string(to_string(r.regime)) + " has no value to verify");
  SandwichReport s;
  s.regime = r.regime;
  s.estimate = *r.value;
  s.slack = cfg.slack;
  s.oracle_lower = maximize_ratio(prob, cfg.oracle, cfg.quadrature).lower_bound;
  s.ratio = s.oracle_lower == 0.0 ? 0.0 : s.oracle_lower / s.estimate;
  s.pass = !(s.oracle_lower > s.estimate * s.slack);
  return s;
}

// ---------------------------------------------------------------------------
// Sweep

const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes{"p1",           "p2",           "th1",      "th2",
                                             "omega1_scale", "omega2_scale", "v1_scale", "v2_scale"};
  return axes;
}

ProblemConfig with_axis(const ProblemConfig& base, const std::string& axis, double value) {
  ProblemConfig c = base;
  if (axis == "p1") {
    c.p1 = format_double(value);
  } else if (axis == "p2") {
    c.p2 = format_double(value);
  } else if (axis == "th1") {
    c.th1 = format_double(value);
  } else if (axis == "th2") {
    c.th2 = format_double(value);
  } else if (axis == "omega1_scale") {
    c.omega1 = scaled_expression(c.omega1, value);
  } else if (axis == "omega2_scale") {
    c.omega2 = scaled_expression(c.omega2, value);
  } else if (axis == "v1_scale") {
    c.v1 = scaled_expression(c.v1, value);
  } else if (axis == "v2_scale") {
    c.v2 = scaled_expression(c.v2, value);
  } else {
    throw Error("unknown sweep axis '" + axis + "'");
  }
  return c;
}

std::vector<SweepRow> sweep(const ProblemConfig& base, const std::string& axis, double from, double to, int steps,
                            bool with_oracle, const EstimatorFn& estimator) {
  if (std::find(sweep_axes().begin(), sweep_axes().end(), axis) == sweep_axes().end()) {
    throw Error("unknown sweep axis '" + axis + "'");
  }
  if (steps < 0) throw Error("--steps must be >= 0");
  const EstimatorFn est = estimator ? estimator : EstimatorFn(&morrey::estimate);
  const std::size_t count = static_cast<std::size_t>(steps) + 1;
  std::vector<SweepRow> rows(count);
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < count; start += workers) {
    std::vector<std::future<SweepRow>> batch;
    for (std::size_t i = start; i < std::min(count, start + workers); ++i) {
      const double x = steps == 0 ? from : from + (to - from) * static_cast<double>(i) / steps;
      batch.push_back(std::async(std::launch::async, sweep_point, std::cref(base), std::cref(axis), x,
                                 with_oracle, std::cref(est)));
    }
    for (std::size_t k = 0; k < batch.size(); ++k) rows[start + k] = batch[k].get();
  }
  return rows;
}

std::string csv_header() { return "axis_value,regime,estimate,oracle_lower,error"; }

std::string csv_row(const SweepRow& row) {
  std::string s = format_double(row.axis_value) + "," + row.regime + ",";
  if (row.estimate && !std::isnan(*row.estimate)) s += format_double(*row.estimate);
  s += ",";
  if (row.oracle_lower && !std::isnan(*row.oracle_lower)) s += format_double(*row.oracle_lower);
  return s + "," + csv_escape(row.error);
}

// ---------------------------------------------------------------------------
// Command line

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EstimatorFn& estimator) {
  const EstimatorFn est = estimator ? estimator : EstimatorFn(&morrey::estimate);

  CLI::App app{"Embedding constants between local Morrey-type spaces", "morrey"};
  app.require_subcommand(1);
  std::string config_path;
  bool as_json = false;
  std::optional<std::uint64_t> seed;
  bool force = false;
  std::optional<double> rel_tol;
  std::optional<int> budget;
  std::string axis;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;

  auto common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "JSON problem config")->check(CLI::ExistingFile);
    if (needs_config) opt->required();
    sub->add_flag("--json", as_json, "machine-readable output");
    sub->add_option("--seed", seed, "oracle seed");
    sub->add_flag("--force", force, "evaluate the formula even if a hypothesis check fails");
    sub->add_option("--rel-tol", rel_tol, "quadrature relative tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--oracle-budget", budget,
                    "oracle ascent iterations per level and restart; for estimate and sweep also enables the oracle")
        ->check(CLI::PositiveNumber);
  };
  auto* c_est = app.add_subcommand("estimate", "classify the parameters and evaluate the regime formula");
  common(c_est, true);
  auto* c_ver = app.add_subcommand("verify", "sandwich the estimate against the test-function oracle");
  common(c_ver, true);
  auto* c_cls = app.add_subcommand("classify", "print the regime tag for the exponents");
  common(c_cls, true);
  auto* c_swp = app.add_subcommand(
      "sweep",
      "CSV over one axis. Columns: axis_value,regime,estimate,oracle_lower,error. "
      "Axes: p1 p2 th1 th2 omega1_scale omega2_scale v1_scale v2_scale. "
      "The oracle column is filled only with --oracle-budget.");
  common(c_swp, true);
  c_swp->add_option("--axis", axis, "axis name")->required()->check(CLI::IsMember(sweep_axes()));
  c_swp->add_option("--from", from, "first axis value")->required();
  c_swp->add_option("--to", to, "last axis value")->required();
  c_swp->add_option("--steps", steps, "number of intervals; 0 gives one row")->check(CLI::NonNegativeNumber);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    // Subcommand help requests surface as CallForHelp above; everything else is a usage error.
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    ProblemConfig cfg = ProblemConfig::load(config_path);
    if (seed) cfg.oracle.seed = *seed;
    if (force) cfg.force = true;
    if (rel_tol) cfg.quadrature.rel_tol = *rel_tol;
    if (budget) cfg.oracle.ascent_iters = *budget;
    cfg.quadrature.validate();
    cfg.oracle.validate();

    if (c_cls->parsed()) {
      const RegimeTag tag = classify(cfg.params());
      if (as_json) {
        out << json{{"regime", std::string(to_string(tag))}, {"has_formula", has_formula(tag)}}.dump(2) << "\n";
      } else {
        out << to_string(tag) << "\n";
      }
      return 0;
    }

    if (c_swp->parsed()) {
      const auto rows = sweep(cfg, axis, from, to, steps, budget.has_value(), est);
      if (as_json) {
        json arr = json::array();
        for (const auto& r : rows) {
          arr.push_back({{"axis_value", r.axis_value},
                         {"regime", r.regime},
                         {"estimate", r.estimate ? number_json(*r.estimate) : json(nullptr)},
                         {"oracle_lower", r.oracle_lower ? number_json(*r.oracle_lower) : json(nullptr)},
                         {"error", r.error}});
        }
        out << arr.dump(2) << "\n";
      } else {
        out << csv_header() << "\n";
        for (const auto& r : rows) out << csv_row(r) << "\n";
      }
      return 0;
    }

    const ParamQuadruple pq = cfg.params();
    const RegimeTag tag = classify(pq);
    if (!has_formula(tag)) {
      const EstimateReport r = valueless_report(tag);
      if (as_json) {
        out << report_to_json(r, std::nullopt).dump(2) << "\n";
      } else {
        print_report(out, r);
      }
      return 2;
    }
    const RadialProblem prob = cfg.problem();

    if (c_est->parsed()) {
      EstimateReport r = est(prob, cfg.quadrature, options_of(cfg));
      std::optional<OracleConfig> used;
      if (budget) {
        r.oracle_lower = maximize_ratio(prob, cfg.oracle, cfg.quadrature).lower_bound;
        used = cfg.oracle;
      }
      if (as_json) {
        out << report_to_json(r, used).dump(2) << "\n";
      } else {
        print_report(out, r);
      }
      return r.value ? 0 : 2;
    }

    const SandwichReport s = sandwich(prob, cfg, est);
    if (as_json) {
      out << json{{"regime", std::string(to_string(s.regime))},
                  {"estimate", number_json(s.estimate)},
                  {"oracle_lower", number_json(s.oracle_lower)},
                  {"ratio", number_json(s.ratio)},
                  {"slack", s.slack},
                  {"status", s.pass ? "PASS" : "FAIL"},
                  {"budget", budget_json(cfg.oracle)}}
                 .dump(2)
          << "\n";
    } else {
      out << "regime: " << to_string(s.regime) << "\n"
          << "estimate: " << text(s.estimate) << "\n"
          << "oracle_lower: " << text(s.oracle_lower) << "\n"
          << "ratio: " << text(s.ratio) << "\n"
          << "slack: " << text(s.slack) << "\n"
          << (s.pass ? "PASS" : "FAIL") << "\n";
    }
    return s.pass ? 0 : 1;
  } catch (const HypothesisFailed& e) {
    err << "error: hypothesis failed: " << e.what() << " (rerun with --force to evaluate anyway)\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace morrey::cli
