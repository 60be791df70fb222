#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace morrey {

/// Parsed weight expression over the single variable `t`.
///
/// Grammar (standard precedence, left associative):
///
///     expr   := term (('+'|'-') term)*
///     term   := factor (('*'|'/') factor)*
///     factor := '-' factor | atom ('^' ['-'|'+'] number)?
///     atom   := 't' | number | 'exp' '(' expr ')' | 'log' '(' expr ')'
///             | ('min'|'max') '(' expr ',' expr ')'
///             | 'chi' '(' number ',' number ')' | '(' expr ')'
///
/// `chi(a,b)` is the indicator of the open interval (a,b) and is the only
/// discontinuous primitive.
class Expression {
 public:
  enum class Op : std::uint8_t { Var, Num, Neg, Add, Sub, Mul, Div, Pow, Exp, Log, Min, Max, Chi };

  struct Node {
    Op op = Op::Num;
    double a = 0.0;  // Num value, Pow exponent, Chi lower end
    double b = 0.0;  // Chi upper end
    std::int32_t lhs = -1;
    std::int32_t rhs = -1;
  };

  Expression() = default;

  static Expression parse(std::string_view src);
  static Expression constant(double c);

  double operator()(double t) const { return eval(root_, t); }

  /// Fully parenthesised source that parses back to the same tree.
  std::string to_string() const;

  /// True when the tree contains chi, min or max.
  bool nonsmooth() const;
  /// Sorted, de-duplicated positive chi endpoints.
  std::vector<double> breakpoints() const;
  /// Points where the expression may blow up (0 for negative powers, log, division).
  std::vector<double> singularities() const;

  bool empty() const { return nodes_.empty(); }

 private:
  friend class ExpressionParser;

  double eval(std::int32_t idx, double t) const;
  void print(std::int32_t idx, std::string& out) const;

  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
};

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

}  // namespace morrey
