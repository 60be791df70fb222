#pragma once

#include <limits>
#include <string>

namespace morrey {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// An exponent in (0, inf].
class Exponent {
 public:
  constexpr Exponent() = default;
  explicit Exponent(double value);

  static Exponent infinity() { return Exponent(kInf); }

  constexpr double value() const { return value_; }
  constexpr bool is_infinite() const { return value_ == kInf; }
  /// 1/value with 1/inf = 0.
  constexpr double reciprocal() const { return is_infinite() ? 0.0 : 1.0 / value_; }

  friend constexpr bool operator==(Exponent a, Exponent b) { return a.value_ == b.value_; }
  friend constexpr auto operator<=>(Exponent a, Exponent b) { return a.value_ <=> b.value_; }

 private:
  double value_ = 1.0;
};

/// Hoelder conjugate p' extended to (0, inf]: p/(1-p) for p<1, inf at 1,
/// p/(p-1) for p>1 and 1 at inf.
Exponent conjugate(Exponent p);

/// p -> q: the exponent r with 1/r = 1/q - 1/p when q < p, and inf when q >= p.
Exponent arrow(Exponent p, Exponent q);

/// Parses "2", "0.5", "inf".
Exponent parse_exponent(const std::string& text);

}  // namespace morrey
