#include "morrey/weight.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "morrey/errors.hpp"

namespace morrey {

namespace {

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace

Weight1D::Weight1D() : fn_([](double) { return 1.0; }), description_("1") {}

Weight1D Weight1D::constant(double c) {
  Weight1D w;
  w.fn_ = [c](double) { return c; };
  w.description_ = format_double(c);
  return w;
}

Weight1D Weight1D::from_expression(Expression expr) {
  Weight1D w;
  auto shared = std::make_shared<const Expression>(std::move(expr));
  w.fn_ = [shared](double t) { return (*shared)(t); };
  w.description_ = shared->to_string();
  w.nonsmooth_ = shared->nonsmooth();
  w.breakpoints_ = shared->breakpoints();
  w.singularities_ = shared->singularities();
  w.expr_ = std::move(shared);
  return w;
}

Weight1D Weight1D::from_function(RealFn fn, std::string description, bool nonsmooth,
                                 std::vector<double> breakpoints) {
  Weight1D w;
  w.fn_ = std::move(fn);
  w.description_ = std::move(description);
  w.nonsmooth_ = nonsmooth;
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  w.breakpoints_ = std::move(breakpoints);
  return w;
}

Weight1D Weight1D::scaled(double lambda) const {
  Weight1D w = *this;
  w.fn_ = [f = fn_, lambda](double t) { return lambda * f(t); };
  w.description_ = format_double(lambda) + "*(" + description_ + ")";
  w.expr_.reset();
  return w;
}

Weight1D Weight1D::pow(double exponent) const {
  Weight1D w = *this;
  w.fn_ = [f = fn_, exponent](double t) { return std::pow(f(t), exponent); };
  w.description_ = "(" + description_ + ")^" + format_double(exponent);
  w.expr_.reset();
  return w;
}

Weight1D Weight1D::times(const Weight1D& other) const {
  Weight1D w = *this;
  w.fn_ = [f = fn_, g = other.fn_](double t) {
    double x = f(t);
    double y = g(t);
    return (x == 0.0 || y == 0.0) ? 0.0 : x * y;
  };
  w.description_ = "(" + description_ + ")*(" + other.description_ + ")";
  w.nonsmooth_ = nonsmooth_ || other.nonsmooth_;
  w.breakpoints_ = merged(breakpoints_, other.breakpoints_);
  w.singularities_ = merged(singularities_, other.singularities_);
  w.expr_.reset();
  return w;
}

Weight1D Weight1D::divided_by(const Weight1D& other) const {
  Weight1D w = *this;
  w.fn_ = [f = fn_, g = other.fn_](double t) {
    double x = f(t);
    return x == 0.0 ? 0.0 : x / g(t);
  };
  w.description_ = "(" + description_ + ")/(" + other.description_ + ")";
  w.nonsmooth_ = nonsmooth_ || other.nonsmooth_;
  w.breakpoints_ = merged(breakpoints_, other.breakpoints_);
  w.singularities_ = merged(singularities_, other.singularities_);
  w.expr_.reset();
  return w;
}

Weight1D parse_weight(std::string_view src) {
  Expression expr = Expression::parse(src);
  // Probe a log grid plus both sides of every chi endpoint.
  std::vector<double> probes;
  for (int k = -8 * 16; k <= 8 * 16; ++k) probes.push_back(std::pow(10.0, k / 16.0));
  for (double b : expr.breakpoints()) {
    probes.push_back(b * (1 - 1e-9));
    probes.push_back(b * (1 + 1e-9));
  }
  std::sort(probes.begin(), probes.end());
  for (double t : probes) {
    double v = expr(t);
    if (std::isnan(v) || v < 0.0) {
      throw ValidationError("weight '" + std::string(src) + "' is negative or undefined at t=" +
                                format_double(t),
                            t);
    }
  }
  return Weight1D::from_expression(std::move(expr));
}

}  // namespace morrey
