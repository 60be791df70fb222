#include "morrey/exponent.hpp"

#include <charconv>
#include <cmath>

#include "morrey/errors.hpp"

namespace morrey {

Exponent::Exponent(double value) : value_(value) {
  if (!(value > 0.0)) throw DomainError("exponent must lie in (0, inf]");
}

Exponent conjugate(Exponent p) {
  double v = p.value();
  if (p.is_infinite()) return Exponent(1.0);
  if (v == 1.0) return Exponent::infinity();
  if (v < 1.0) return Exponent(v / (1.0 - v));
  return Exponent(v / (v - 1.0));
}

Exponent arrow(Exponent p, Exponent q) {
  if (q >= p) return Exponent::infinity();
  // q < p, so q is finite.
  double inv = 1.0 / q.value() - p.reciprocal();
  return Exponent(1.0 / inv);
}

Exponent parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return Exponent::infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("malformed exponent '" + text + "'", static_cast<std::size_t>(ptr - text.data()));
  }
  return Exponent(v);
}

}  // namespace morrey
