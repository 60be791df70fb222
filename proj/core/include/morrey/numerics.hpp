#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "morrey/exponent.hpp"
#include "morrey/weight.hpp"

namespace morrey {

/// Open interval (lo, hi) with 0 <= lo < hi <= inf.
struct Interval {
  double lo = 0.0;
  double hi = kInf;

  Interval() = default;
  Interval(double lo_, double hi_);

  static Interval ray() { return {}; }
  bool finite() const { return hi < kInf; }
};

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-300;
  int max_subdivisions = 4000;
  int grid_points_per_decade = 32;
  /// Stop criterion for supremum refinement.
  double sup_rel_tol = 1e-6;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Quadrature

/// Adaptive Gauss-Kronrod (7/15) on a finite interval [a, b] in the original
/// variable. Throws NonConvergent when the subdivision budget is exhausted.
double integrate_finite(const RealFn& f, double a, double b, const QuadratureConfig& cfg,
                        std::span<const double> breakpoints = {});

/// Integral of a non-negative f over iv.
///
/// Works in u = log t, so power singularities at 0 and slowly decaying tails
/// at inf become exponential ends. Unbounded ends are covered by successive
/// two-decade chunks; a geometric tail correction is added once chunks decay.
/// Returns +inf when fifteen successive chunk extensions fail to decay.
/// Throws DomainError on negative or NaN values and NonConvergent on budget
/// exhaustion.
double integrate(const RealFn& f, const Interval& iv, const QuadratureConfig& cfg,
                 std::span<const double> breakpoints = {});

/// ||f w||_{p, iv}; p = inf gives the (grid) supremum of f w.
double weighted_lp_norm(const RealFn& f, Exponent p, const Weight1D& w, const Interval& iv,
                        const QuadratureConfig& cfg);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(std::size_t n);

// ---------------------------------------------------------------------------
// Cumulative integrals

/// Tabulated head/tail integrals of a non-negative density on (0, inf).
///
/// Pieces between log-spaced nodes are integrated once; head(t) and tail(t)
/// then cost one short local integral. Tails are accumulated from the right so
/// small tails do not suffer cancellation against the total.
class CumulativeIntegral {
 public:
  CumulativeIntegral(RealFn density, const QuadratureConfig& cfg, std::vector<double> breakpoints = {});

  /// Integral over (0, t).
  double head(double t) const;
  /// Integral over (t, inf).
  double tail(double t) const;
  /// Integral over (a, b), a < b.
  double between(double a, double b) const;
  double total() const { return prefix_.back(); }

  const RealFn& density() const { return density_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  double local(double a, double b) const;

  RealFn density_;
  QuadratureConfig cfg_;
  std::vector<double> breakpoints_;
  std::vector<double> nodes_;
  std::vector<double> prefix_;  // prefix_[i] = integral over (0, nodes_[i]); last entry = total
  std::vector<double> suffix_;  // suffix_[i] = integral over (nodes_[i], inf)
};

/// Head and tail theta-norms of a weight: ||w||_{theta,(0,t)} and ||w||_{theta,(t,inf)}.
class WeightNorms {
 public:
  WeightNorms(const Weight1D& w, Exponent theta, const QuadratureConfig& cfg);

  double head(double t) const;
  double tail(double t) const;
  double total() const;
  Exponent theta() const { return theta_; }
  const Weight1D& weight() const { return weight_; }

 private:
  Weight1D weight_;
  Exponent theta_;
  CumulativeIntegral cum_;
};

// ---------------------------------------------------------------------------
// Stieltjes integration against d(-G)

enum class Orientation { TailRight, HeadLeftInverse };

/// The non-increasing function G(t) = ||w||_{theta,(t,inf)}^r (TailRight) or
/// G(t) = ||w||_{theta,(0,t)}^{-r} (HeadLeftInverse), and the measure -dG.
class TailMeasure {
 public:
  TailMeasure(Weight1D base, Exponent theta, Exponent power, Orientation orientation,
              const QuadratureConfig& cfg);

  double G(double t) const;
  /// Density of -dG with respect to dt: (r/theta) G0^{r-theta} w^theta for
  /// TailRight and (r/theta) G0^{-r-theta} w^theta for HeadLeftInverse, G0 the
  /// un-powered norm.
  double density(double t) const;
  /// G(0+) - G(inf).
  double total_mass() const;

  const Weight1D& base() const { return base_; }
  Exponent theta() const { return theta_; }
  Exponent power() const { return power_; }
  Orientation orientation() const { return orientation_; }
  const WeightNorms& norms() const { return *norms_; }

 private:
  Weight1D base_;
  Exponent theta_;
  Exponent power_;
  Orientation orientation_;
  std::shared_ptr<const WeightNorms> norms_;
};

enum class StieltjesMethod { Auto, Density, Sums };

/// Integral of F against -dG over (0, inf). Auto uses the density formula
/// unless the base weight is flagged nonsmooth, in which case Richardson
/// extrapolated Riemann-Stieltjes sums are used.
double stieltjes_integrate(const RealFn& F, const TailMeasure& m, const QuadratureConfig& cfg,
                           StieltjesMethod method = StieltjesMethod::Auto);

// ---------------------------------------------------------------------------
// Suprema

struct SupResult {
  double value = 0.0;
  double argmax = 0.0;
};

/// Supremum of a non-negative, piecewise-continuous F over iv, on a log grid
/// refined around the running argmax. Unbounded ends are extended by decades;
/// thirty successive decades each raising the maximum by more than 10% report
/// +inf.
SupResult sup_over_ray(const RealFn& F, const Interval& iv, const QuadratureConfig& cfg,
                       std::span<const double> breakpoints = {});

/// t -> sup_{s in (0,t)} F(s), tabulated once on a dense log grid.
class RunningSup {
 public:
  RunningSup(RealFn F, const QuadratureConfig& cfg, std::vector<double> breakpoints = {});

  double operator()(double t) const;
  double limit_at_infinity() const { return sup_all_; }

 private:
  RealFn fn_;
  QuadratureConfig cfg_;
  std::vector<double> breakpoints_;
  std::vector<double> nodes_;
  std::vector<double> prefix_max_;
  double below_first_ = 0.0;  // sup over (0, nodes_.front()]
  double sup_all_ = 0.0;
};

/// Caches f by argument. The cache is shared by copies of the returned
/// function and is not synchronized: keep it within one thread.
RealFn memoize(RealFn f);

/// Natural-log grid helper: points 10^{k/ppd} for lo <= t <= hi plus the given
/// breakpoints, sorted.
std::vector<double> log_grid(double lo, double hi, int points_per_decade,
                             std::span<const double> extra = {});

}  // namespace morrey
