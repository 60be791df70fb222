#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "morrey/estimators.hpp"
#include "morrey/oracle.hpp"

namespace morrey::cli {

/// Flat JSON problem description.
///
///     {"n": 1, "p1": 2, "p2": 1, "th1": 2, "th2": 1,
///      "omega1": "t^-0.25", "omega2": "exp(-t)", "v1": "1", "v2": "1",
///      "rel_tol": 1e-8, "oracle": {"restarts": 5, ...}}
///
/// Exponents may be numbers or strings ("2", "inf").
struct ProblemConfig {
  int n = 1;
  std::string p1 = "1";
  std::string p2 = "1";
  std::string th1 = "1";
  std::string th2 = "1";
  std::string omega1 = "1";
  std::string omega2 = "1";
  std::string v1 = "1";
  std::string v2 = "1";
  QuadratureConfig quadrature;
  OracleConfig oracle;
  double slack = 8.0;
  bool force = false;

  static ProblemConfig from_json(const nlohmann::json& j);
  static ProblemConfig load(const std::string& path);
  nlohmann::json to_json() const;

  ParamQuadruple params() const;
  /// Parses all four weights; throws ParseError / ValidationError.
  RadialProblem problem() const;
};

using EstimatorFn =
    std::function<EstimateReport(const RadialProblem&, const QuadratureConfig&, const EstimateOptions&)>;

struct SandwichReport {
  RegimeTag regime = RegimeTag::Unsupported;
  double estimate = 0.0;
  double oracle_lower = 0.0;
  /// oracle_lower / estimate.
  double ratio = 0.0;
  double slack = 8.0;
  bool pass = true;
};

/// Sweepable axes: p1, p2, th1, th2, omega1_scale, omega2_scale, v1_scale, v2_scale.
const std::vector<std::string>& sweep_axes();
ProblemConfig with_axis(const ProblemConfig& base, const std::string& axis, double value);

struct SweepRow {
  double axis_value = 0.0;
  std::string regime;
  std::optional<double> estimate;
  std::optional<double> oracle_lower;
  std::string error;
};

/// Evaluates steps+1 equally spaced points on [from, to] concurrently; rows come back in axis order.
std::vector<SweepRow> sweep(const ProblemConfig& base, const std::string& axis, double from, double to, int steps,
                            bool with_oracle, const EstimatorFn& estimator);

std::string csv_header();
std::string csv_row(const SweepRow& row);

nlohmann::json report_to_json(const EstimateReport& r, const std::optional<OracleConfig>& budget);
nlohmann::json number_json(double x);

SandwichReport sandwich(const RadialProblem& prob, const ProblemConfig& cfg, const EstimatorFn& estimator);

/// Entry point behind `morrey`. Returns 0 on success, 2 for value-less regimes
/// (NotEmbedded, OpenCase, Unsupported), 1 for errors and failed verification.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EstimatorFn& estimator = nullptr);

}  // namespace morrey::cli
