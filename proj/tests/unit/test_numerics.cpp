#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "morrey/errors.hpp"
#include "morrey/numerics.hpp"

using namespace morrey;

namespace {

QuadratureConfig cfg;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Exponent, ArrowAndConjugate) {
  EXPECT_TRUE(arrow(Exponent(1), Exponent(2)).is_infinite());
  EXPECT_TRUE(arrow(Exponent(2), Exponent(2)).is_infinite());
  EXPECT_DOUBLE_EQ(arrow(Exponent(2), Exponent(1)).value(), 2.0);
  EXPECT_DOUBLE_EQ(arrow(Exponent(3), Exponent(1)).value(), 1.5);
  EXPECT_DOUBLE_EQ(arrow(Exponent::infinity(), Exponent(2)).value(), 2.0);
  EXPECT_DOUBLE_EQ(conjugate(Exponent(2)).value(), 2.0);
  EXPECT_TRUE(conjugate(Exponent(1)).is_infinite());
  EXPECT_DOUBLE_EQ(conjugate(Exponent::infinity()).value(), 1.0);
  EXPECT_DOUBLE_EQ(conjugate(Exponent(0.5)).value(), 1.0);
  EXPECT_TRUE(parse_exponent("inf").is_infinite());
  EXPECT_DOUBLE_EQ(parse_exponent("2.5").value(), 2.5);
  EXPECT_THROW(Exponent(0.0), DomainError);
  EXPECT_THROW(Exponent(-1.0), DomainError);
}

TEST(Quadrature, ClosedForms) {
  EXPECT_LT(rel(integrate([](double t) { return std::exp(-t); }, Interval::ray(), cfg), 1.0), 1e-10);
  EXPECT_LT(rel(integrate([](double t) { return 1.0 / std::sqrt(t); }, Interval(0, 1), cfg), 2.0), 1e-10);
  EXPECT_LT(rel(integrate([](double t) { return 1.0 / (1 + t * t); }, Interval::ray(), cfg), std::numbers::pi / 2),
            1e-10);
  EXPECT_LT(rel(integrate([](double t) { return std::pow(t, -1.5); }, Interval(1, kInf), cfg), 2.0), 1e-9);
  EXPECT_LT(rel(integrate_finite([](double t) { return t * t; }, 0, 3, cfg), 9.0), 1e-12);
}

TEST(Quadrature, DivergenceIsInfinite) {
  EXPECT_TRUE(std::isinf(integrate([](double t) { return 1.0 / t; }, Interval(1, kInf), cfg)));
  EXPECT_TRUE(std::isinf(integrate([](double t) { return 1.0 / (t * t); }, Interval(0, 1), cfg)));
}

TEST(Quadrature, RejectsNegativeIntegrand) {
  EXPECT_THROW(integrate([](double t) { return t - 1; }, Interval(0, 2), cfg), DomainError);
}

TEST(Quadrature, Breakpoints) {
  auto chi = [](double t) { return t > 0.3 && t < 0.7 ? 1.0 : 0.0; };
  const std::vector<double> bps{0.3, 0.7};
  EXPECT_NEAR(integrate(chi, Interval::ray(), cfg, bps), 0.4, 1e-12);
}

TEST(Quadrature, GaussLegendreIntegratesPolynomials) {
  for (std::size_t n : {2u, 6u, 10u}) {
    const auto& gl = gauss_legendre(n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += gl.weights[i] * std::pow(gl.nodes[i], 2 * n - 2);
    EXPECT_NEAR(s, 2.0 / (2 * n - 1), 1e-13);
  }
}

TEST(Cumulative, HeadTailAgainstClosedForm) {
  CumulativeIntegral c([](double t) { return std::exp(-t); }, cfg);
  for (double t : {1e-5, 0.1, 1.0, 7.0, 40.0}) {
    EXPECT_LT(rel(c.head(t), -std::expm1(-t)), 1e-9) << t;
    EXPECT_LT(rel(c.tail(t), std::exp(-t)), 1e-9) << t;
  }
  EXPECT_LT(rel(c.between(1, 2), std::exp(-1) - std::exp(-2)), 1e-9);
  EXPECT_LT(rel(c.total(), 1.0), 1e-10);
}

TEST(Cumulative, WeightNormsOfPower) {
  WeightNorms w(Weight1D::from_function([](double t) { return std::pow(t, -0.25); }, "t^-0.25"), Exponent(2),
                cfg);
  for (double t : {0.01, 1.0, 100.0}) EXPECT_LT(rel(w.head(t), std::sqrt(2 * std::sqrt(t))), 1e-9);
  EXPECT_TRUE(std::isinf(w.tail(1.0)));
}

TEST(Supremum, InteriorMaximum) {
  auto r = sup_over_ray([](double t) { return t * std::exp(-t); }, Interval::ray(), cfg);
  EXPECT_LT(rel(r.value, std::exp(-1.0)), 1e-9);
  EXPECT_NEAR(r.argmax, 1.0, 1e-3);
}

TEST(Supremum, LimitAtBoundaryAndDivergence) {
  auto r = sup_over_ray([](double t) { return std::sqrt(-std::expm1(-2 * t) / (4 * t)); }, Interval::ray(), cfg);
  EXPECT_LT(rel(r.value, std::sqrt(0.5)), 1e-5);
  EXPECT_TRUE(std::isinf(sup_over_ray([](double t) { return std::sqrt(t); }, Interval::ray(), cfg).value));
}

TEST(Supremum, RunningSupIsMonotone) {
  RunningSup s([](double t) { return std::abs(std::sin(std::log(t))); }, cfg);
  double prev = 0.0;
  for (double t = 1e-3; t < 1e3; t *= 1.37) {
    const double v = s(t);
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_NEAR(s.limit_at_infinity(), 1.0, 1e-6);
}

TEST(Stieltjes, DensityAgreesWithSums) {
  const Weight1D w = Weight1D::from_function([](double t) { return std::exp(-t); }, "exp(-t)");
  TailMeasure m(w, Exponent(2), Exponent(1), Orientation::TailRight, cfg);
  auto F = [](double t) { return t / (1 + t); };
  const double a = stieltjes_integrate(F, m, cfg, StieltjesMethod::Density);
  const double b = stieltjes_integrate(F, m, cfg, StieltjesMethod::Sums);
  EXPECT_LT(rel(a, b), 1e-6);
}

TEST(Stieltjes, TotalMassOfTailMeasure) {
  const Weight1D w = Weight1D::from_function([](double t) { return std::exp(-t); }, "exp(-t)");
  TailMeasure m(w, Exponent(1), Exponent(3), Orientation::TailRight, cfg);
  EXPECT_LT(rel(m.total_mass(), 1.0), 1e-9);
  EXPECT_LT(rel(stieltjes_integrate([](double) { return 1.0; }, m, cfg), 1.0), 1e-7);
}

TEST(Memoize, CachesCalls) {
  int calls = 0;
  RealFn f = memoize([&calls](double t) {
    ++calls;
    return t * 2;
  });
  EXPECT_EQ(f(1.5), 3.0);
  EXPECT_EQ(f(1.5), 3.0);
  RealFn g = f;
  EXPECT_EQ(g(1.5), 3.0);
  EXPECT_EQ(calls, 1);
}

// Property: integrate(c * f) = c * integrate(f) for random power-exponential integrands.
TEST(QuadratureProperty, LinearInScale) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ua(-0.9, 2.0);
  std::uniform_real_distribution<double> ub(0.2, 3.0);
  std::uniform_real_distribution<double> uc(1e-3, 1e3);
  for (int k = 0; k < 25; ++k) {
    const double a = ua(rng);
    const double b = ub(rng);
    const double c = uc(rng);
    auto f = [a, b](double t) { return std::pow(t, a) * std::exp(-b * t); };
    const double exact = std::tgamma(a + 1) / std::pow(b, a + 1);
    const double v = integrate(f, Interval::ray(), cfg);
    EXPECT_LT(rel(v, exact), 1e-8) << a << " " << b;
    EXPECT_LT(rel(integrate([&](double t) { return c * f(t); }, Interval::ray(), cfg), c * v), 1e-9);
  }
}
