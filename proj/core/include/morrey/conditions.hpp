#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "morrey/numerics.hpp"
#include "morrey/spaces.hpp"

namespace morrey {

enum class Tri { Yes, No, Undetermined };

std::string_view to_string(Tri t);

struct Sample {
  double t = 0.0;
  double value = 0.0;
};

enum class WeightClass { Omega, cOmega };

/// Membership of a weight in Omega_theta (0 < tail norm < inf for every t) or
/// cOmega_theta (0 < head norm < inf for every t), sampled on a log grid.
struct ClassReport {
  std::string name;
  Tri member = Tri::Undetermined;
  std::vector<Sample> witnesses;
  std::string notes;
};

struct QuasiconcavityReport {
  std::string name;
  Tri is_U_quasiconcave = Tri::Undetermined;
  Tri is_nondegenerate = Tri::Undetermined;
  /// phi(0+), 1/phi(inf), (phi/U)(inf), (U/phi)(0+); NaN when inconclusive.
  std::array<double, 4> limit_diagnostics{};
  std::vector<Sample> witnesses;
  std::string notes;
};

struct GridOptions {
  double lo = 1e-6;
  double hi = 1e6;
  /// 0 means QuadratureConfig::grid_points_per_decade.
  int points_per_decade = 0;
  /// Tolerance factor for "equivalent to monotone".
  double factor = 1.05;
};

ClassReport check_class(const Weight1D& w, Exponent theta, WeightClass kind, const QuadratureConfig& cfg,
                        const GridOptions& grid = {});

/// Continuous, strictly increasing, U(0+) = 0, U(inf) = inf, checked on a grid
/// with decade extrapolation of the two limits.
Tri check_admissible(const RealFn& U, const QuadratureConfig& cfg, const GridOptions& grid = {});

QuasiconcavityReport check_quasiconcave(const RealFn& phi, const RealFn& U, const QuadratureConfig& cfg,
                                        const GridOptions& grid = {});

/// Limit of g at 0+ (toward_zero) or inf from decade samples: 0 when g decays
/// geometrically, the last value when it settles, inf when it grows, NaN when
/// the trend is mixed.
double extrapolate_limit(const RealFn& g, bool toward_zero, double lo = 1e-6, double hi = 1e6);

/// U(t) int_0^inf w(tau) / (U(tau) + U(t)) dtau.
double fundamental_function(const Weight1D& w, const RealFn& U, double t, const QuadratureConfig& cfg);

/// x -> sup_t V~(t) V(x,t) ||omega1||_{theta1,(0,t)}^{-1}.
class Phi1 {
 public:
  Phi1(const RadialProblem& prob, const QuadratureConfig& cfg);
  double operator()(double x) const;

 private:
  RealFn vt_;
  RealFn head_;
  QuadratureConfig cfg_;
  std::vector<double> breakpoints_;
};

/// x -> (int [V~(t) V(x,t)]^s d(-||omega1||_{theta1,(0,t)}^{-s}))^{1/s},
/// s = theta1 -> p2. Requires p2 < theta1.
class Phi2 {
 public:
  Phi2(const RadialProblem& prob, const QuadratureConfig& cfg);
  double operator()(double x) const;
  const TailMeasure& measure() const { return measure_; }

 private:
  RealFn vt_;
  double s_;
  TailMeasure measure_;
  QuadratureConfig cfg_;
};

double phi1(double x, const RadialProblem& prob, const QuadratureConfig& cfg);
double phi2(double x, const RadialProblem& prob, const QuadratureConfig& cfg);

}  // namespace morrey
