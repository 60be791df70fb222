#include <algorithm>
#include <cmath>

#include "morrey/errors.hpp"
#include "morrey/numerics.hpp"

namespace morrey {

namespace {

constexpr double kGridLo = 1e-8;
constexpr double kGridHi = 1e8;
constexpr int kGridPointsPerDecade = 4;

}  // namespace

CumulativeIntegral::CumulativeIntegral(RealFn density, const QuadratureConfig& cfg,
                                       std::vector<double> breakpoints)
    : density_(std::move(density)), cfg_(cfg), breakpoints_(std::move(breakpoints)) {
  std::sort(breakpoints_.begin(), breakpoints_.end());
  nodes_ = log_grid(kGridLo, kGridHi, kGridPointsPerDecade, breakpoints_);
  const std::size_t n = nodes_.size();
  std::vector<double> pieces(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) pieces[i] = local(nodes_[i], nodes_[i + 1]);

  prefix_.resize(n + 1);
  prefix_[0] = integrate(density_, Interval(0.0, nodes_.front()), cfg_, breakpoints_);
  for (std::size_t i = 1; i < n; ++i) prefix_[i] = prefix_[i - 1] + pieces[i - 1];

  suffix_.resize(n);
  suffix_[n - 1] = integrate(density_, Interval(nodes_.back(), kInf), cfg_, breakpoints_);
  for (std::size_t i = n - 1; i-- > 0;) suffix_[i] = suffix_[i + 1] + pieces[i];

  prefix_[n] = prefix_[n - 1] + suffix_[n - 1];
}

double CumulativeIntegral::local(double a, double b) const {
  if (!(a < b)) return 0.0;
  return integrate(density_, Interval(a, b), cfg_, breakpoints_);
}

double CumulativeIntegral::head(double t) const {
  if (!(t > 0.0)) return 0.0;
  if (t == kInf) return total();
  if (t < nodes_.front()) return integrate(density_, Interval(0.0, t), cfg_, breakpoints_);
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  const double base = prefix_[j];
  if (std::isinf(base)) return kInf;
  return base + local(nodes_[j], t);
}

double CumulativeIntegral::tail(double t) const {
  if (t == kInf) return 0.0;
  if (!(t > 0.0)) return total();
  if (t >= nodes_.back()) return integrate(density_, Interval(t, kInf), cfg_, breakpoints_);
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - nodes_.begin());
  const double base = suffix_[j];
  if (std::isinf(base)) return kInf;
  return base + local(t, nodes_[j]);
}

double CumulativeIntegral::between(double a, double b) const {
  if (!(a < b)) return 0.0;
  return local(a, b);
}

WeightNorms::WeightNorms(const Weight1D& w, Exponent theta, const QuadratureConfig& cfg)
    : weight_(w),
      theta_(theta),
      cum_(
          [w, th = theta.value()](double t) {
            const double v = w(t);
            return v == 0.0 ? 0.0 : std::pow(v, th);
          },
          cfg, w.breakpoints()) {
  if (theta.is_infinite()) throw DomainError("WeightNorms requires a finite exponent");
}

double WeightNorms::head(double t) const {
  const double s = cum_.head(t);
  return std::isinf(s) ? kInf : std::pow(s, 1.0 / theta_.value());
}

double WeightNorms::tail(double t) const {
  const double s = cum_.tail(t);
  return std::isinf(s) ? kInf : std::pow(s, 1.0 / theta_.value());
}

double WeightNorms::total() const {
  const double s = cum_.total();
  return std::isinf(s) ? kInf : std::pow(s, 1.0 / theta_.value());
}

}  // namespace morrey
