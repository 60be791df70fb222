#pragma once

#include <cstdint>
#include <vector>

#include "morrey/numerics.hpp"
#include "morrey/spaces.hpp"

namespace morrey {

struct OracleConfig {
  int annuli_count = 8;
  double span_lo = 1e-3;
  double span_hi = 1e3;
  int restarts = 5;
  /// Coordinate probes per restart and refinement level.
  int ascent_iters = 200;
  /// Number of levels; each level doubles the annuli and lowers the minimum
  /// annulus log-width by a factor of 100.
  int refine_levels = 3;
  std::uint64_t seed = 0;

  void validate() const;
};

struct OracleResult {
  double lower_bound = 0.0;
  RadialTestFunction best_function;
  /// Best value after each refinement level (non-decreasing).
  std::vector<double> trace;
};

/// Forward: cLM_{p1 theta1, omega1}(v1) -> LM_{p2 theta2, omega2}(v2).
/// Reverse: LM_{p1 theta1, omega1}(v1) -> cLM_{p2 theta2, omega2}(v2).
enum class Direction { Forward, Reverse };

/// Target norm over source norm with 0/0 = 0 and x/0 = inf.
class RatioEvaluator {
 public:
  RatioEvaluator(const RadialProblem& prob, const QuadratureConfig& cfg, Direction dir = Direction::Forward);
  double operator()(const RadialTestFunction& f) const;

 private:
  MorreyNorm target_;
  MorreyNorm source_;
};

double ratio(const RadialTestFunction& f, const RadialProblem& prob, const QuadratureConfig& cfg,
             Direction dir = Direction::Forward);

/// Lower bound on the embedding constant: multi-restart coordinate ascent over
/// annular step functions. Deterministic for a given seed.
OracleResult maximize_ratio(const RadialProblem& prob, const OracleConfig& ocfg, const QuadratureConfig& cfg,
                            Direction dir = Direction::Forward);

/// int_t^inf g.
double h_star(const RealFn& g, double t, const QuadratureConfig& cfg);

struct DualResult {
  double lower_bound = 0.0;
  RadialTestFunction best_function;
  RadialTestFunction best_g;
  std::vector<double> trace;
};

/// Value of the dual functional for one pair (f, g):
///   (int g(tau) ||f||_{p2,v2,B(0,tau)}^{p2} dtau / ||g||_{theta2/(theta2-p2), omega2^{-p2}})^{1/p2}
///   / ||f||_{cLM}.
/// Requires p2 < theta2.
class DualEvaluator {
 public:
  DualEvaluator(const RadialProblem& prob, const QuadratureConfig& cfg);
  double operator()(const RadialTestFunction& f, const RadialTestFunction& g) const;
  /// int g(tau) ||f||_{p2,v2,B(0,tau)}^{p2} dtau.
  double pairing(const RadialTestFunction& f, const RadialTestFunction& g) const;
  /// ||g||_{theta2/(theta2-p2), omega2^{-p2}}.
  double g_norm(const RadialTestFunction& g) const;

 private:
  RadialProblem prob_;
  QuadratureConfig cfg_;
  double p2_;
  double r_;  // theta2 / (theta2 - p2)
  MorreyNorm source_;
  std::shared_ptr<const CumulativeIntegral> g_weight_;
};

/// Lower bound from the dual formulation: joint ascent over f and a step
/// function g (sup_g sup_f = sup_{(f, g)}). Same budget semantics as
/// maximize_ratio; g carries as many steps as f.
DualResult dual_lower_bound(const RadialProblem& prob, const OracleConfig& ocfg, const QuadratureConfig& cfg);

/// Inversion x -> x/|x|^2, t -> 1/t: v_i(r) -> v_i(1/r) r^{-2n/p_i},
/// omega_i(t) -> t^{-2/theta_i} omega_i(1/t). The forward ratio of the result
/// at f(1/r) equals the reverse ratio of prob at f.
RadialProblem reverse_problem(const RadialProblem& prob);

/// f(r) -> f(1/r) on step functions.
RadialTestFunction invert(const RadialTestFunction& f);

}  // namespace morrey
