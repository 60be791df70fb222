#include <algorithm>
#include <cmath>

#include "morrey/errors.hpp"
#include "morrey/numerics.hpp"

namespace morrey {

TailMeasure::TailMeasure(Weight1D base, Exponent theta, Exponent power, Orientation orientation,
                         const QuadratureConfig& cfg)
    : base_(std::move(base)),
      theta_(theta),
      power_(power),
      orientation_(orientation),
      norms_(std::make_shared<const WeightNorms>(base_, theta, cfg)) {
  if (power.is_infinite()) throw DomainError("tail measure power must be finite");
}

double TailMeasure::G(double t) const {
  const double r = power_.value();
  if (orientation_ == Orientation::TailRight) {
    const double tail = norms_->tail(t);
    return tail == 0.0 ? 0.0 : std::pow(tail, r);
  }
  const double head = norms_->head(t);
  if (head == 0.0) return kInf;
  return std::isinf(head) ? 0.0 : std::pow(head, -r);
}

double TailMeasure::density(double t) const {
  const double w = base_(t);
  if (w == 0.0) return 0.0;
  const double th = theta_.value();
  const double r = power_.value();
  const double wt = std::pow(w, th);
  if (orientation_ == Orientation::TailRight) {
    const double g0 = norms_->tail(t);
    if (std::isinf(g0)) throw ClassViolation("tail norm is infinite at t=" + format_double(t));
    // The tail underflowed: the mass beyond t is G(t) = 0.
    if (g0 == 0.0) return 0.0;
    return (r / th) * std::pow(g0, r - th) * wt;
  }
  const double g0 = norms_->head(t);
  if (std::isinf(g0)) return 0.0;
  if (g0 == 0.0) throw ClassViolation("head norm vanishes at t=" + format_double(t));
  return (r / th) * std::pow(g0, -r - th) * wt;
}

double TailMeasure::total_mass() const {
  const double r = power_.value();
  if (orientation_ == Orientation::TailRight) {
    const double total = norms_->total();
    return std::isinf(total) ? kInf : std::pow(total, r);
  }
  const double total = norms_->total();
  const double at_inf = std::isinf(total) ? 0.0 : std::pow(total, -r);
  // G(0+) = lim head^{-r}; the head norm of a weight in the class tends to 0.
  const double head0 = norms_->head(1e-300);
  const double at_zero = head0 == 0.0 ? kInf : std::pow(head0, -r);
  return at_zero - at_inf;
}

namespace {

double stieltjes_density(const RealFn& F, const TailMeasure& m, const QuadratureConfig& cfg) {
  auto integrand = [&](double t) {
    const double f = F(t);
    if (f == 0.0) return 0.0;
    const double d = m.density(t);
    return d == 0.0 ? 0.0 : f * d;
  };
  return integrate(integrand, Interval::ray(), cfg, m.base().breakpoints());
}

// Midpoint (in log t) Riemann-Stieltjes sum over [lo, hi].
double midpoint_sum(const RealFn& F, const TailMeasure& m, double lo, double hi, int ppd,
                    const std::vector<double>& bps) {
  const std::vector<double> grid = log_grid(lo, hi, ppd, bps);
  double sum = 0.0;
  double g_prev = m.G(grid.front());
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double g_next = m.G(grid[i + 1]);
    const double mass = g_prev - g_next;
    g_prev = g_next;
    if (mass == 0.0) continue;
    const double f = F(std::sqrt(grid[i] * grid[i + 1]));
    if (f == 0.0) continue;
    if (std::isinf(mass)) return kInf;
    sum += f * std::max(mass, 0.0);
  }
  return sum;
}

double stieltjes_sums(const RealFn& F, const TailMeasure& m, const QuadratureConfig& cfg) {
  const std::vector<double>& bps = m.base().breakpoints();
  double lo = 1e-6;
  double hi = 1e6;
  for (double b : bps) {
    lo = std::min(lo, b / 10);
    hi = std::max(hi, b * 10);
  }
  const int coarse = 16;
  double core = midpoint_sum(F, m, lo, hi, coarse, bps);
  if (std::isinf(core)) return kInf;

  // Widen until the added decades stop contributing.
  auto widen = [&](double& end, double factor) {
    int quiet = 0;
    for (int k = 0; k < 150 && quiet < 2; ++k) {
      const double next = end * factor;
      const double add = factor < 1 ? midpoint_sum(F, m, next, end, coarse, bps)
                                    : midpoint_sum(F, m, end, next, coarse, bps);
      if (std::isinf(add)) return false;
      core += add;
      end = next;
      quiet = add <= 1e-3 * cfg.rel_tol * core ? quiet + 1 : 0;
    }
    return quiet >= 2;
  };
  if (!widen(lo, 1e-2) || !widen(hi, 1e2)) return kInf;

  double prev_sum = midpoint_sum(F, m, lo, hi, 32, bps);
  double prev_rich = prev_sum;
  for (int ppd = 64; ppd <= 8192; ppd *= 2) {
    const double s = midpoint_sum(F, m, lo, hi, ppd, bps);
    const double rich = s + (s - prev_sum) / 3.0;
    if (std::abs(rich - prev_rich) <= cfg.rel_tol * std::abs(rich)) return rich;
    prev_sum = s;
    prev_rich = rich;
  }
  throw NonConvergent("Riemann-Stieltjes sums did not settle up to 8192 points per decade");
}

}  // namespace

double stieltjes_integrate(const RealFn& F, const TailMeasure& m, const QuadratureConfig& cfg,
                           StieltjesMethod method) {
  if (method == StieltjesMethod::Auto) {
    method = m.base().nonsmooth() ? StieltjesMethod::Sums : StieltjesMethod::Density;
  }
  return method == StieltjesMethod::Density ? stieltjes_density(F, m, cfg) : stieltjes_sums(F, m, cfg);
}

}  // namespace morrey
