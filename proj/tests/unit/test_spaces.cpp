#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "morrey/errors.hpp"
#include "morrey/spaces.hpp"

using namespace morrey;

namespace {

QuadratureConfig cfg;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

RadialProblem power_problem(int n, double p1, double p2) {
  ParamQuadruple pq{Exponent(p1), Exponent(p2), Exponent(2), Exponent(1), n};
  return RadialProblem::radial(pq, Weight1D(), Weight1D(), Weight1D(), Weight1D());
}

RadialTestFunction annulus(double a, double b, double level = 1.0) { return {{a, b}, {level}}; }

// Nested quadrature straight from the definition: outer integral in t of
// omega^theta times the inner L_p norm over B(0,t) or its complement.
double brute_morrey(MorreyKind kind, const RadialTestFunction& f, double p, double theta, const RealFn& omega,
                    const RealFn& v, int n) {
  const double sigma = sphere_area(n);
  auto inner = [&](double t) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < f.breakpoints.size(); ++i) {
      double a = f.breakpoints[i];
      double b = f.breakpoints[i + 1];
      if (kind == MorreyKind::LM) b = std::min(b, t);
      else a = std::max(a, t);
      if (!(a < b)) continue;
      auto g = [&](double r) { return std::pow(f.levels[i] * v(r), p) * sigma * std::pow(r, n - 1); };
      s += integrate_finite(g, a, b, cfg);
    }
    return std::pow(s, 1.0 / p);
  };
  auto outer = [&](double t) {
    const double w = omega(t);
    const double x = inner(t);
    return w == 0.0 || x == 0.0 ? 0.0 : std::pow(w * x, theta);
  };
  std::vector<double> bps = f.breakpoints;
  return std::pow(integrate(outer, Interval::ray(), cfg, bps), 1.0 / theta);
}

}  // namespace

TEST(Spaces, SphereArea) {
  EXPECT_DOUBLE_EQ(sphere_area(1), 2.0);
  EXPECT_NEAR(sphere_area(2), 2 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(sphere_area(3), 4 * std::numbers::pi, 1e-14);
  for (int n = 1; n < 25; ++n) {
    const double exact = 2 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
    EXPECT_LT(rel(sphere_area(n), exact), 1e-13) << n;
  }
}

TEST(Spaces, VTildeExamples) {
  EXPECT_LT(rel(v_tilde(2.0, power_problem(1, 2, 1), cfg), 2.0), 1e-9);
  EXPECT_LT(rel(v_tilde(1.0, power_problem(2, 2, 1), cfg), std::sqrt(std::numbers::pi)), 1e-9);
  for (double x : {0.1, 1.0, 50.0}) EXPECT_NEAR(v_tilde(x, power_problem(1, 2, 2), cfg), 1.0, 1e-12);
}

TEST(Spaces, VScript) {
  const RadialProblem prob = power_problem(1, 2, 1);
  EXPECT_NEAR(v_script(3.0, 3.0, prob, cfg), 0.5, 1e-12);
  EXPECT_NEAR(v_script(1.0, 4.0, prob, cfg), 1.0 / 3.0, 1e-9);
  EXPECT_LT(v_script(1e-12, 1.0, prob, cfg), 1e-5);
  EXPECT_EQ(kernel_ratio(0.0, 0.0), 0.0);
  EXPECT_EQ(kernel_ratio(2.0, 2.0), 0.5);
}

TEST(Spaces, LmExample) {
  const Weight1D om = parse_weight("exp(-t)");
  const double v = lm_norm(annulus(1e-12, 1), Exponent(1), Exponent(1), om, Weight1D(), 1, cfg);
  EXPECT_LT(rel(v, 2 * (1 - std::exp(-1.0))), 1e-8);
}

TEST(Spaces, ClmExample) {
  const Weight1D om = parse_weight("chi(0,1)");
  EXPECT_LT(rel(clm_norm(annulus(1, 2), Exponent(1), Exponent(1), om, Weight1D(), 1, cfg), 2.0), 1e-9);
}

TEST(Spaces, ZeroFunctionAndHomogeneity) {
  const Weight1D om = parse_weight("exp(-t)");
  RadialTestFunction f{{0.5, 1, 3}, {2, 0.5}};
  RadialTestFunction z{{0.5, 1}, {0.0}};
  EXPECT_EQ(lm_norm(z, Exponent(2), Exponent(3), om, Weight1D(), 1, cfg), 0.0);
  EXPECT_EQ(clm_norm(z, Exponent(2), Exponent(3), om, Weight1D(), 1, cfg), 0.0);
  const double a = lm_norm(f, Exponent(2), Exponent(3), om, Weight1D(), 1, cfg);
  EXPECT_LT(rel(lm_norm(f.scaled(7.5), Exponent(2), Exponent(3), om, Weight1D(), 1, cfg), 7.5 * a), 1e-13);
}

TEST(Spaces, ClmOnlySeesOmegaBelowSupport) {
  // f lives in (0, 2): changing omega beyond 2 leaves the cLM norm unchanged.
  RadialTestFunction f{{0.5, 2}, {1}};
  const double a = clm_norm(f, Exponent(2), Exponent(2), parse_weight("t^-0.25*chi(0,2)"), Weight1D(), 1, cfg);
  const double b =
      clm_norm(f, Exponent(2), Exponent(2), parse_weight("t^-0.25*chi(0,2)+chi(2,9)*5"), Weight1D(), 1, cfg);
  EXPECT_LT(rel(a, b), 1e-12);
}

TEST(Spaces, LmppWeightExamples) {
  const Weight1D w = lmpp_weight(Exponent(1), parse_weight("exp(-t)"), Weight1D(), MorreyKind::LM, cfg);
  for (double r : {0.1, 1.0, 5.0}) EXPECT_LT(rel(w(r), std::exp(-r)), 1e-8);
  const Weight1D h = lmpp_weight(Exponent(2), parse_weight("chi(0,1)+chi(1,1e9)*exp(-t)"), Weight1D(),
                                 MorreyKind::cLM, cfg);
  for (double r : {0.01, 0.25, 0.9}) EXPECT_LT(rel(h(r), std::sqrt(r)), 1e-8);
}

TEST(Spaces, RadialLpNorm) {
  // ||chi_{B(0,1)}||_{2} in R^3 = sqrt(4 pi / 3).
  EXPECT_LT(rel(radial_lp_norm(annulus(1e-300, 1), Exponent(2), Weight1D(), 3, cfg), std::sqrt(4 * std::numbers::pi / 3)),
            1e-9);
}

TEST(Spaces, ProblemReductions) {
  ParamQuadruple pq{Exponent(2), Exponent(1), Exponent(2), Exponent(1), 1};
  const RadialProblem prob =
      RadialProblem::radial(pq, Weight1D(), Weight1D(), parse_weight("t^0.5"), parse_weight("t"));
  ASSERT_TRUE(prob.v_angular_integral().has_value());
  EXPECT_NEAR(prob.v_angular_sup()(4.0), 2.0, 1e-12);
  // (v2/v1)^{p1 p2/(p1-p2)} sigma r^{n-1} = (sqrt r)^2 * 2
  EXPECT_NEAR((*prob.v_angular_integral())(4.0), 8.0, 1e-12);
  const RadialProblem eq = prob.with_params({Exponent(2), Exponent(2), Exponent(2), Exponent(3), 1});
  EXPECT_FALSE(eq.v_angular_integral().has_value());
}

TEST(Spaces, InvalidTestFunction) {
  RadialTestFunction bad{{1, 0.5}, {1}};
  EXPECT_THROW(bad.validate(), DomainError);
  RadialTestFunction neg{{0.5, 1}, {-1}};
  EXPECT_THROW(neg.validate(), DomainError);
}

// Property: MorreyNorm agrees with nested quadrature on random step functions.
TEST(SpacesProperty, MorreyNormMatchesNestedQuadrature) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lu(-2.0, 1.5);
  std::uniform_real_distribution<double> lv(0.1, 3.0);
  const std::vector<std::pair<double, double>> exps{{1, 1}, {2, 1}, {2, 3}, {0.5, 2}, {3, 1.5}};
  auto om_lm = [](double t) { return std::exp(-t); };
  auto om_clm = [](double t) { return std::pow(t, -0.25) * (t < 1 ? 1.0 : std::exp(1 - t)); };
  const Weight1D wl = parse_weight("exp(-t)");
  const Weight1D wc = parse_weight("t^-0.25*(chi(0,1)+chi(1,1e12)*exp(1-t))");
  const Weight1D v = parse_weight("t^0.5");
  auto vf = [](double r) { return std::sqrt(r); };
  for (int k = 0; k < 10; ++k) {
    RadialTestFunction f;
    std::vector<double> pts{lu(rng), lu(rng), lu(rng)};
    std::sort(pts.begin(), pts.end());
    for (double u : pts) f.breakpoints.push_back(std::pow(10.0, u));
    f.levels = {lv(rng), lv(rng)};
    const auto [p, th] = exps[k % exps.size()];
    const int n = 1 + k % 3;
    const double a = lm_norm(f, Exponent(p), Exponent(th), wl, v, n, cfg);
    EXPECT_LT(rel(a, brute_morrey(MorreyKind::LM, f, p, th, om_lm, vf, n)), 1e-7) << k << " p=" << p << " th=" << th << " n=" << n;
    const double b = clm_norm(f, Exponent(p), Exponent(th), wc, v, n, cfg);
    EXPECT_LT(rel(b, brute_morrey(MorreyKind::cLM, f, p, th, om_clm, vf, n)), 1e-7) << k << " p=" << p << " th=" << th << " n=" << n;
  }
}
