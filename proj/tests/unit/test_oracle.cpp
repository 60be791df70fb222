#include <gtest/gtest.h>

#include <cmath>

#include "../support/suite.hpp"
#include "morrey/errors.hpp"
#include "morrey/oracle.hpp"

using namespace morrey;
using morrey::testing::instance;

namespace {

QuadratureConfig cfg;

double rel(double a, double b) { return a == b ? 0.0 : std::abs(a - b) / std::abs(b); }

OracleConfig small() {
  OracleConfig o;
  o.restarts = 2;
  o.ascent_iters = 60;
  o.refine_levels = 2;
  return o;
}

}  // namespace

TEST(HStar, Examples) {
  EXPECT_NEAR(h_star([](double t) { return std::exp(-t); }, 0.0, cfg), 1.0, 1e-10);
  EXPECT_NEAR(h_star([](double t) { return t < 1 ? 1.0 : 0.0; }, 0.25, cfg), 0.75, 1e-8);
  EXPECT_NEAR(h_star([](double t) { return 1 / (t * t); }, 1.0, cfg), 1.0, 1e-9);
  EXPECT_THROW(h_star([](double) { return 1.0; }, -1.0, cfg), DomainError);
}

TEST(Ratio, ScaleInvariantAndBounded) {
  const RadialProblem prob = instance(RegimeTag::Main01).problem();
  const RadialTestFunction f{{0.5, 1.5}, {1.0}};
  const double r = ratio(f, prob, cfg);
  EXPECT_GT(r, 0.0);
  EXPECT_LT(r, std::pow(M_PI / 2, 0.25));
  EXPECT_LT(rel(ratio(f.scaled(123.0), prob, cfg), r), 1e-13);
  EXPECT_THROW(ratio(RadialTestFunction{{0.5, 1.5}, {0.0}}, prob, cfg), DomainError);
}

TEST(Oracle, ConfigValidation) {
  OracleConfig o;
  EXPECT_NO_THROW(o.validate());
  o.annuli_count = 0;
  EXPECT_THROW(o.validate(), DomainError);
  o = OracleConfig{};
  o.span_lo = 10;
  o.span_hi = 1;
  EXPECT_THROW(o.validate(), DomainError);
}

TEST(Oracle, DeterministicMonotoneAndReproducible) {
  const RadialProblem prob = instance(RegimeTag::Main02_i).problem();
  const OracleResult a = maximize_ratio(prob, small(), cfg);
  const OracleResult b = maximize_ratio(prob, small(), cfg);
  EXPECT_EQ(a.lower_bound, b.lower_bound);
  EXPECT_EQ(a.best_function.breakpoints, b.best_function.breakpoints);
  ASSERT_EQ(a.trace.size(), 2u);
  EXPECT_LE(a.trace[0], a.trace[1]);
  EXPECT_EQ(a.trace.back(), a.lower_bound);
  EXPECT_LT(std::abs(ratio(a.best_function, prob, cfg) - a.lower_bound), 1e-9 * a.lower_bound);
  EXPECT_GE(a.best_function.breakpoints.front(), 1e-3 * (1 - 1e-9));
  EXPECT_LE(a.best_function.breakpoints.back(), 1e3 * (1 + 1e-9));
  OracleConfig other = small();
  other.seed = 99;
  EXPECT_NE(maximize_ratio(prob, other, cfg).lower_bound, a.lower_bound);
}

TEST(Oracle, HomogeneityInOmega) {
  const RadialProblem prob = instance(RegimeTag::Main01).problem();
  const double a = maximize_ratio(prob, small(), cfg).lower_bound;
  const double b = maximize_ratio(prob.with_omega2(prob.omega2().scaled(2)), small(), cfg).lower_bound;
  const double c = maximize_ratio(prob.with_omega1(prob.omega1().scaled(4)), small(), cfg).lower_bound;
  EXPECT_LT(rel(b, 2 * a), 1e-12);
  EXPECT_LT(rel(c, a / 4), 1e-12);
}

TEST(Dual, SingleStepReproducesRatio) {
  // With g = chi_{(0,T)} and f a single annulus, the pairing equals the
  // p2-th power of the LM norm with omega = chi_{(0,T)} (Fubini).
  const RadialProblem prob = instance(RegimeTag::Main02_i).problem();
  const DualEvaluator d(prob, cfg);
  const RadialTestFunction f{{0.5, 1.5}, {1.0}};
  const RadialTestFunction g{{1e-3, 4.0}, {1.0}};
  const Weight1D chi = Weight1D::from_function([](double t) { return t > 1e-3 && t < 4.0 ? 1.0 : 0.0; },
                                                "chi", true, {1e-3, 4.0});
  const double p2 = prob.params().p2.value();
  const double direct = std::pow(lm_norm(f, Exponent(p2), Exponent(p2), chi, prob.v2(), 1, cfg), p2);
  EXPECT_LT(rel(d.pairing(f, g), direct), 1e-8);
  EXPECT_GT(d.g_norm(g), 0.0);
}

TEST(Dual, RequiresP2BelowTheta2) {
  EXPECT_THROW(DualEvaluator(instance(RegimeTag::Main01).problem(), cfg), DomainError);
}

TEST(Dual, CloseToPrimal) {
  const RadialProblem prob = instance(RegimeTag::Main02_i).problem();
  const double primal = maximize_ratio(prob, small(), cfg).lower_bound;
  const DualResult d = dual_lower_bound(prob, small(), cfg);
  EXPECT_LT(std::abs(d.lower_bound - primal), 0.1 * primal);
  EXPECT_LE(d.trace[0], d.trace[1]);
}

TEST(Reverse, PlugInExample) {
  ParamQuadruple pq{Exponent(2), Exponent(2), Exponent(2), Exponent(2), 1};
  const RadialProblem prob = RadialProblem::radial(pq, Weight1D(), Weight1D(), Weight1D(), Weight1D());
  const RadialProblem r = reverse_problem(prob);
  for (double t : {0.1, 1.0, 7.0}) {
    EXPECT_NEAR(r.v1()(t), 1 / t, 1e-14 / t);
    EXPECT_NEAR(r.omega1()(t), 1 / t, 1e-14 / t);
  }
}

TEST(Reverse, InvolutionAndChangeOfVariables) {
  const RadialProblem prob = instance(RegimeTag::Main02_i).problem();
  const RadialProblem q = reverse_problem(prob);
  const RadialProblem back = reverse_problem(q);
  for (double t = 1e-3; t < 1e3; t *= 1.7) {
    EXPECT_LT(rel(back.omega1()(t), prob.omega1()(t)), 1e-12);
    EXPECT_LT(rel(back.omega2()(t), prob.omega2()(t)), 1e-12);
  }
  const RadialTestFunction f{{0.01, 0.2, 3, 40}, {1, 3, 0.5}};
  EXPECT_EQ(invert(invert(f)).levels, f.levels);
  EXPECT_LT(rel(ratio(f, prob, cfg), ratio(invert(f), q, cfg, Direction::Reverse)), 1e-9);
}
