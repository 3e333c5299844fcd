#include <benchmark/benchmark.h>

#include "attrib/crossfit.hpp"
#include "attrib/dgp.hpp"
#include "attrib/lasso.hpp"
#include "attrib/logistic.hpp"
#include "attrib/pn.hpp"
#include "attrib/rng.hpp"

using namespace attrib;

namespace {

GeneratedSample sample_case(int case_id, int n) {
  return generate_case(case_registry(case_id), n, 20240101);
}

void BM_GenerateCase(benchmark::State& state) {
  const DgpSpec spec = case_registry(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto g = generate_case(spec, 2000, 7);
    benchmark::DoNotOptimize(g.data.y.sum());
  }
}
BENCHMARK(BM_GenerateCase)->Arg(1)->Arg(19);

void BM_FitLogistic(benchmark::State& state) {
  const auto g = sample_case(3, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto m = fit_logistic(g.data.x, g.data.a);
    benchmark::DoNotOptimize(m.coefficients.sum());
  }
}
BENCHMARK(BM_FitLogistic)->Arg(500)->Arg(2000);

void BM_FitLassoPath(benchmark::State& state) {
  const auto g = sample_case(3, 1000);
  for (auto _ : state) {
    auto m = fit_lasso_logistic(g.data.x, g.data.a, 100, 5);
    benchmark::DoNotOptimize(m.lambda);
  }
}
BENCHMARK(BM_FitLassoPath);

void BM_CrossFit(benchmark::State& state) {
  const auto g = sample_case(1, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto nf = cross_fit(g.data, 5, ModelKind::Logistic, std::nullopt, 11);
    benchmark::DoNotOptimize(nf.e_hat.sum());
  }
}
BENCHMARK(BM_CrossFit)->Arg(500)->Arg(2000);

void BM_StudyReplication(benchmark::State& state) {
  // One full replication: draw, cross-fit, estimate.
  const DgpSpec spec = case_registry(1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto g = generate_case(spec, 2000, ++seed);
    const auto nf = cross_fit(g.data, 5, ModelKind::Logistic, std::nullopt, seed);
    benchmark::DoNotOptimize(pn_mono(g.data, nf).value);
  }
}
BENCHMARK(BM_StudyReplication);

}  // namespace

BENCHMARK_MAIN();
