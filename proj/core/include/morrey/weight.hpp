#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "morrey/expression.hpp"

namespace morrey {

using RealFn = std::function<double(double)>;

/// A non-negative, piecewise-continuous function on (0, inf).
///
/// Either backed by a parsed expression or by an arbitrary callable (derived
/// weights such as reduced radial profiles). Immutable and cheap to copy.
class Weight1D {
 public:
  Weight1D();

  static Weight1D constant(double c);
  static Weight1D from_expression(Expression expr);
  static Weight1D from_function(RealFn fn, std::string description, bool nonsmooth = false,
                                std::vector<double> breakpoints = {});

  double operator()(double t) const { return fn_(t); }

  bool nonsmooth() const { return nonsmooth_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& singularities() const { return singularities_; }
  const std::string& description() const { return description_; }
  /// Non-null only for expression-backed weights.
  const Expression* expression() const { return expr_.get(); }

  Weight1D scaled(double lambda) const;
  Weight1D pow(double exponent) const;
  Weight1D times(const Weight1D& other) const;
  Weight1D divided_by(const Weight1D& other) const;

  const RealFn& function() const { return fn_; }

 private:
  RealFn fn_;
  std::shared_ptr<const Expression> expr_;
  std::string description_;
  bool nonsmooth_ = false;
  std::vector<double> breakpoints_;
  std::vector<double> singularities_;
};

/// Parses and validates a weight: throws ParseError on syntax errors and
/// ValidationError (with a witness) if the weight is negative or NaN somewhere
/// on a log grid spanning (1e-8, 1e8).
Weight1D parse_weight(std::string_view src);

}  // namespace morrey
