#include <benchmark/benchmark.h>

#include "riesz/measures.hpp"
#include "riesz/simple_fns.hpp"
#include "riesz/spectrum.hpp"
#include "riesz/transform.hpp"

using namespace riesz;

namespace {

const PwlFunction kTent = parse_pwl("pwl (0,0) (1/2,1) (1,0)");
const PwlFunction kWiggle = parse_pwl("pwl (0,1/2) (1/2,1) (5/7,-3/7) (3/4,1/5) (6/7,-1) (1,1/3)");

void BM_Meet(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(meet(kTent, kWiggle));
}
BENCHMARK(BM_Meet);

void BM_UnitRamp(benchmark::State& state) {
  const Rational n(static_cast<long>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(unit_ramp(kWiggle, n));
}
BENCHMARK(BM_UnitRamp)->Arg(10)->Arg(1 << 20);

void BM_SpecLeq(benchmark::State& state) {
  const BasicOpen u = open_of(kWiggle - Rational(1, 4)), v = open_of(kWiggle);
  for (auto _ : state) benchmark::DoNotOptimize(spec_leq(u, v));
}
BENCHMARK(BM_SpecLeq);

void BM_SfLeq(benchmark::State& state) {
  std::vector<Term> ts;
  for (long i = 0; i < state.range(0); ++i)
    ts.push_back({Rational(1, i + 1), Region::open(Rational(i, 2 * state.range(0)), Rational(i + 1, state.range(0)))});
  const SimpleFn u(Polarity::Open, ts);
  for (auto _ : state) benchmark::DoNotOptimize(sf_leq(u, u));
}
BENCHMARK(BM_SfLeq)->DenseRange(2, 8, 2);

void BM_IntegrateLebesgue(benchmark::State& state) {
  const Integral I = integral_of_valuation(Valuation::lebesgue());
  const Rational eps(1, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(I(kTent).approx(eps));
}
BENCHMARK(BM_IntegrateLebesgue)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_IntegrateDirac(benchmark::State& state) {
  const Integral I = integral_of_valuation(Valuation::dirac(Rational(1, 3)));
  for (auto _ : state) benchmark::DoNotOptimize(I(PwlFunction::identity()).approx(Rational(1, 100)));
}
BENCHMARK(BM_IntegrateDirac)->Unit(benchmark::kMillisecond);

void BM_RoundTripIntegral(benchmark::State& state) {
  const Integral back = integral_of_valuation(valuation_of_integral(Integral::riemann()));
  for (auto _ : state) benchmark::DoNotOptimize(back(kWiggle).approx(Rational(1, 20)));
}
BENCHMARK(BM_RoundTripIntegral)->Unit(benchmark::kMillisecond);

void BM_MeasureOfRiemann(benchmark::State& state) {
  const Valuation mu = valuation_of_integral(Integral::riemann());
  const BasicOpen u = open_of(kWiggle);
  for (auto _ : state) benchmark::DoNotOptimize(mu(u).approx(static_cast<Budget>(state.range(0))));
}
BENCHMARK(BM_MeasureOfRiemann)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
