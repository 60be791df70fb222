#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "morrey/conditions.hpp"
#include "morrey/spaces.hpp"

namespace morrey {

enum class RegimeTag {
  Main01,
  Main02_i,
  Main02_ii,
  Main03_i,
  Main03_ii,
  Thm1_i,
  Thm1_ii,
  Thm3_i,
  Thm3_ii,
  Thm3_iii,
  Thm3_iv,
  Thm2,
  Thm4_i,
  Thm4_ii,
  NotEmbedded,
  OpenCase,
  Unsupported,
};

std::string_view to_string(RegimeTag tag);
std::optional<RegimeTag> regime_from_string(std::string_view s);
/// Tags that carry a formula (everything except NotEmbedded, OpenCase, Unsupported).
const std::vector<RegimeTag>& formula_regimes();
bool has_formula(RegimeTag tag);

/// Decision table over (p1, p2, theta1, theta2). Total: every quadruple gets one tag.
RegimeTag classify(const ParamQuadruple& params);

struct Term {
  std::string name;
  double value = 0.0;
};

using HypothesisReport = std::variant<ClassReport, QuasiconcavityReport>;

struct EstimateReport {
  RegimeTag regime = RegimeTag::Unsupported;
  /// Absent for OpenCase / Unsupported. +inf is a meaningful value (no embedding).
  std::optional<double> value;
  std::vector<Term> terms;
  std::vector<HypothesisReport> hypothesis_checks;
  std::optional<double> oracle_lower;
  std::vector<std::string> warnings;
  std::string explanation;
  bool hypotheses_verified = true;
};

struct EstimateOptions {
  /// Compute the formula even when a hypothesis check reports No.
  bool force = false;
  bool check_hypotheses = true;
  /// Grid for the quasiconcavity check of phi1 / phi2 (each point is a sup or an integral).
  GridOptions phi_grid{1e-6, 1e6, 4, 1.05};
};

EstimateReport estimate_main01(const RadialProblem& prob, const QuadratureConfig& cfg,
                               const EstimateOptions& opts = {});
EstimateReport estimate_main02(const RadialProblem& prob, const QuadratureConfig& cfg,
                               const EstimateOptions& opts = {});
EstimateReport estimate_main03(const RadialProblem& prob, const QuadratureConfig& cfg,
                               const EstimateOptions& opts = {});
EstimateReport estimate_thm1(const RadialProblem& prob, const QuadratureConfig& cfg,
                             const EstimateOptions& opts = {});
EstimateReport estimate_thm3(const RadialProblem& prob, const QuadratureConfig& cfg,
                             const EstimateOptions& opts = {});
EstimateReport estimate_thm2(const RadialProblem& prob, const QuadratureConfig& cfg,
                             const EstimateOptions& opts = {});
EstimateReport estimate_thm4(const RadialProblem& prob, const QuadratureConfig& cfg,
                             const EstimateOptions& opts = {});

/// Report for a parameter quadruple without a formula (NotEmbedded, OpenCase,
/// Unsupported); usable before any weight is built.
EstimateReport valueless_report(RegimeTag tag);

/// classify, then hypothesis checks, then the matching formula.
EstimateReport estimate(const RadialProblem& prob, const QuadratureConfig& cfg, const EstimateOptions& opts = {});

}  // namespace morrey
