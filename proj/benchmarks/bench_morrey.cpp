#include <benchmark/benchmark.h>

#include <cmath>

#include "morrey/estimators.hpp"
#include "morrey/numerics.hpp"
#include "morrey/oracle.hpp"

using namespace morrey;

namespace {

const QuadratureConfig cfg;

RadialProblem make(double p1, double p2, double th1, double th2, const char* w1, const char* v2 = "1") {
  ParamQuadruple pq{Exponent(p1), Exponent(p2), Exponent(th1), Exponent(th2), 1};
  return RadialProblem::radial(pq, parse_weight(w1), parse_weight("exp(-t)"), Weight1D(), parse_weight(v2));
}

void BM_IntegrateRay(benchmark::State& state) {
  auto f = [](double t) { return std::pow(t, -0.5) * std::exp(-2 * t); };
  for (auto _ : state) benchmark::DoNotOptimize(integrate(f, Interval::ray(), cfg));
}
BENCHMARK(BM_IntegrateRay);

void BM_ParseWeight(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_weight("t^-0.25*(chi(0,1)+exp(-t))"));
}
BENCHMARK(BM_ParseWeight);

void BM_LmNorm(benchmark::State& state) {
  const Weight1D om = parse_weight("exp(-t)");
  RadialTestFunction f;
  const int k = static_cast<int>(state.range(0));
  for (int i = 0; i <= k; ++i) f.breakpoints.push_back(std::pow(10.0, -2.0 + 4.0 * i / k));
  for (int i = 0; i < k; ++i) f.levels.push_back(1.0 + i % 3);
  const MorreyNorm lm(MorreyKind::LM, Exponent(2), Exponent(3), om, Weight1D(), 1, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(lm(f));
}
BENCHMARK(BM_LmNorm)->Arg(8)->Arg(32);

void BM_EstimateMain01(benchmark::State& state) {
  const RadialProblem prob = make(2, 1, 2, 1, "t^-0.25");
  for (auto _ : state) benchmark::DoNotOptimize(estimate(prob, cfg));
}
BENCHMARK(BM_EstimateMain01)->Unit(benchmark::kMillisecond);

void BM_EstimateThm2(benchmark::State& state) {
  const RadialProblem prob = make(2, 2, 1, 3, "t^-0.25", "t");
  for (auto _ : state) benchmark::DoNotOptimize(estimate(prob, cfg));
}
BENCHMARK(BM_EstimateThm2)->Unit(benchmark::kMillisecond);

void BM_EstimateThm3(benchmark::State& state) {
  const RadialProblem prob = make(3, 1, 2, 4, "t^-0.125");
  EstimateOptions o;
  o.check_hypotheses = false;
  for (auto _ : state) benchmark::DoNotOptimize(estimate(prob, cfg, o));
}
BENCHMARK(BM_EstimateThm3)->Unit(benchmark::kMillisecond);

void BM_MaximizeRatio(benchmark::State& state) {
  const RadialProblem prob = make(2, 1, 2, 3, "t^-0.25");
  OracleConfig o;
  o.restarts = 1;
  o.refine_levels = 1;
  o.ascent_iters = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(maximize_ratio(prob, o, cfg));
}
BENCHMARK(BM_MaximizeRatio)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
