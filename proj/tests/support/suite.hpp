#pragma once

#include <string>
#include <vector>

#include "morrey/estimators.hpp"
#include "morrey/spaces.hpp"

namespace morrey::testing {

/// One-dimensional instance with v1 = 1.
struct Instance {
  RegimeTag tag;
  double p1, p2, th1, th2;
  std::string omega1;
  std::string omega2;
  std::string v2 = "1";

  RadialProblem problem() const {
    ParamQuadruple pq{Exponent(p1), Exponent(p2), Exponent(th1), Exponent(th2), 1};
    return RadialProblem::radial(pq, parse_weight(omega1), parse_weight(omega2), Weight1D(), parse_weight(v2));
  }
};

/// One instance per formula regime; every hypothesis check passes on these.
/// Thm1 / Thm3 weights are t^{3/8 - 1/theta1}, which keeps phi non-degenerate.
inline const std::vector<Instance>& regime_suite() {
  static const std::vector<Instance> suite{
      {RegimeTag::Main01, 2, 1, 2, 1, "t^-0.25", "exp(-t)"},
      {RegimeTag::Main02_i, 2, 1, 2, 3, "t^-0.25", "exp(-t)"},
      {RegimeTag::Main02_ii, 3, 1, 3, 2, "t^-0.25", "exp(-t)"},
      {RegimeTag::Main03_i, 2, 1, 1, 1, "t^-0.5", "exp(-t)"},
      {RegimeTag::Main03_ii, 2, 1, 3, 1, "t^-0.25", "exp(-t)"},
      {RegimeTag::Thm1_i, 2, 1, 1, 3, "t^-0.625", "exp(-t)"},
      {RegimeTag::Thm1_ii, 3, 1, 1, 2, "t^-0.625", "exp(-t)"},
      {RegimeTag::Thm3_i, 3, 1, 2, 4, "t^-0.125", "exp(-t)"},
      {RegimeTag::Thm3_ii, 2, 1, 4, 3, "t^0.125", "exp(-t)"},
      {RegimeTag::Thm3_iii, 4, 1, 2, 3, "t^-0.125", "exp(-t)"},
      {RegimeTag::Thm3_iv, 3, 1, 4, 2, "t^0.125", "exp(-t)"},
      {RegimeTag::Thm2, 2, 2, 1, 3, "t^-0.25", "exp(-t)", "t"},
      {RegimeTag::Thm4_i, 1, 1, 2, 3, "t^-0.25", "exp(-t)", "t"},
      {RegimeTag::Thm4_ii, 1, 1, 3, 2, "t^-0.25", "exp(-t)", "t"},
  };
  return suite;
}

inline const Instance& instance(RegimeTag tag) {
  for (const Instance& i : regime_suite()) {
    if (i.tag == tag) return i;
  }
  throw std::out_of_range("no suite instance for tag");
}

}  // namespace morrey::testing
