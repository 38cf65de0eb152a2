#include <benchmark/benchmark.h>

#include <cmath>

#include "mml/bias.hpp"
#include "mml/estimators.hpp"
#include "mml/numerics.hpp"
#include "mml/simulate.hpp"
#include "mml/weibull.hpp"

using namespace mml;

namespace {

DataSet weibull_data(std::size_t n) {
  const ModelPtr m = make_model("weibull");
  RngStream rng(1, 0);
  return m->sample(m->point({2.0, 1.0}), n, rng);
}

void BM_FitMle(benchmark::State& state) {
  const ModelPtr m = make_model("weibull");
  const DataSet d = weibull_data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit_mle(*m, d));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FitMle)->Arg(100)->Arg(1000)->Arg(10000);

void BM_FitWfHalfCauchy(benchmark::State& state) {
  const ModelPtr m = make_model("weibull");
  const PriorSpec hc = half_cauchy_prior({1.0, 1.0});
  const DataSet d = weibull_data(static_cast<std::size_t>(state.range(0)));
  const EstimateResult mle = fit_mle(*m, d);
  for (auto _ : state) benchmark::DoNotOptimize(fit_wf(*m, hc, d, mle.theta_hat));
}
BENCHMARK(BM_FitWfHalfCauchy)->Arg(100)->Arg(1000);

void BM_ComputeCumulants(benchmark::State& state) {
  const ModelPtr m = make_model("weibull");
  const Vector th{2.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(compute_cumulants(*m, th));
}
BENCHMARK(BM_ComputeCumulants);

void BM_QuadratureLogIntegrand(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(integrate_unit_exponential([](double u) { return std::log(u); }));
}
BENCHMARK(BM_QuadratureLogIntegrand);

void BM_RunSimSmall(benchmark::State& state) {
  const ModelPtr m = make_model("weibull");
  const SimConfig cfg{m, half_cauchy_prior({1.0, 1.0}), m->point({2.0, 1.0}), 100, 500, 7, 1};
  for (auto _ : state) benchmark::DoNotOptimize(run_sim(cfg));
}
BENCHMARK(BM_RunSimSmall)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
