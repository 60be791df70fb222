#include <gtest/gtest.h>

#include <cmath>

#include "morrey/conditions.hpp"

using namespace morrey;

namespace {

QuadratureConfig cfg;

RealFn fn(const char* src) {
  Weight1D w = parse_weight(src);
  return [w](double t) { return w(t); };
}

}  // namespace

TEST(Classes, Examples) {
  EXPECT_EQ(check_class(parse_weight("exp(-t)"), Exponent(1), WeightClass::Omega, cfg).member, Tri::Yes);
  const ClassReport chi = check_class(parse_weight("chi(0,1)"), Exponent(1), WeightClass::Omega, cfg);
  EXPECT_EQ(chi.member, Tri::No);
  ASSERT_FALSE(chi.witnesses.empty());
  EXPECT_GE(chi.witnesses.front().t, 1.0);
  EXPECT_EQ(check_class(parse_weight("1"), Exponent(2), WeightClass::cOmega, cfg).member, Tri::Yes);
  EXPECT_EQ(check_class(parse_weight("1"), Exponent(2), WeightClass::Omega, cfg).member, Tri::No);
  EXPECT_EQ(check_class(parse_weight("t^-1"), Exponent(1), WeightClass::cOmega, cfg).member, Tri::No);
}

TEST(Admissible, Examples) {
  EXPECT_EQ(check_admissible(fn("t"), cfg), Tri::Yes);
  EXPECT_EQ(check_admissible(fn("min(t,1)"), cfg), Tri::No);
  EXPECT_EQ(check_admissible(fn("t^0.5"), cfg), Tri::Yes);
  EXPECT_EQ(check_admissible(fn("1+t"), cfg), Tri::No);
}

TEST(Quasiconcave, Examples) {
  const auto a = check_quasiconcave(fn("min(t,1)"), fn("t"), cfg);
  EXPECT_EQ(a.is_U_quasiconcave, Tri::Yes);
  EXPECT_EQ(a.is_nondegenerate, Tri::No);
  const auto b = check_quasiconcave(fn("t^0.5"), fn("t"), cfg);
  EXPECT_EQ(b.is_U_quasiconcave, Tri::Yes);
  EXPECT_EQ(b.is_nondegenerate, Tri::Yes);
  const auto c = check_quasiconcave(fn("t^2"), fn("t"), cfg);
  EXPECT_EQ(c.is_U_quasiconcave, Tri::No);
  EXPECT_FALSE(c.witnesses.empty());
}

TEST(Quasiconcave, ExtrapolateLimit) {
  EXPECT_EQ(extrapolate_limit(fn("t"), true), 0.0);
  EXPECT_TRUE(std::isinf(extrapolate_limit(fn("t"), false)));
  EXPECT_NEAR(extrapolate_limit(fn("1+exp(-t)"), false), 1.0, 1e-9);
}

TEST(Fundamental, ClosedForms) {
  const Weight1D w = parse_weight("chi(0,1)");
  const RealFn U = fn("t");
  EXPECT_NEAR(fundamental_function(w, U, 1.0, cfg), std::log(2.0), 1e-10);
  for (double t : {0.1, 1.0, 10.0}) EXPECT_NEAR(fundamental_function(w, U, t, cfg), t * std::log1p(1 / t), 1e-9);
  EXPECT_EQ(fundamental_function(parse_weight("0*t"), U, 1.0, cfg), 0.0);
}

// Property: every fundamental function is U-quasiconcave.
TEST(FundamentalProperty, AlwaysQuasiconcave) {
  const std::vector<std::pair<const char*, const char*>> pairs{
      {"exp(-t)", "t"}, {"chi(0,1)", "t^0.5"}, {"t^-0.5*exp(-t)", "t^2"}, {"1/(1+t)^2", "t"}};
  for (auto [w, u] : pairs) {
    const Weight1D weight = parse_weight(w);
    const RealFn U = fn(u);
    auto phi = [&](double t) { return fundamental_function(weight, U, t, cfg); };
    EXPECT_EQ(check_quasiconcave(phi, U, cfg, GridOptions{1e-4, 1e4, 4, 1.05}).is_U_quasiconcave, Tri::Yes)
        << w << " " << u;
  }
}

TEST(Phi, PowerInstance) {
  ParamQuadruple pq{Exponent(2), Exponent(1), Exponent(2), Exponent(3), 1};
  const RadialProblem prob =
      RadialProblem::radial(pq, parse_weight("t^-0.25"), parse_weight("exp(-t)"), Weight1D(), Weight1D());
  EXPECT_NEAR(phi2(1.0, prob, cfg), 1.0, 1e-7);
  // omega1 -> 3 omega1 scales phi2 by 1/3
  EXPECT_NEAR(phi2(2.0, prob.with_omega1(prob.omega1().scaled(3)), cfg), phi2(2.0, prob, cfg) / 3, 1e-9);
}

TEST(Phi, Phi1Homogeneity) {
  ParamQuadruple pq{Exponent(2), Exponent(1), Exponent(1), Exponent(3), 1};
  const RadialProblem prob =
      RadialProblem::radial(pq, parse_weight("t^-0.625"), parse_weight("exp(-t)"), Weight1D(), Weight1D());
  for (double x : {0.1, 1.0, 10.0}) {
    const double a = phi1(x, prob, cfg);
    EXPECT_GT(a, 0.0);
    EXPECT_NEAR(phi1(x, prob.with_omega1(prob.omega1().scaled(4)), cfg), a / 4, 1e-7 * a);
  }
}
