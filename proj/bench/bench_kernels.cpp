// Serial reference vs OpenMP path for the two parallel kernels.
#include <benchmark/benchmark.h>

#include <vector>

#include "ecf/cf_core.hpp"
#include "ecf/families.hpp"
#include "ecf/integral.hpp"
#include "ecf/quadrature.hpp"

namespace {

using namespace ecf;

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_EvalBatch(benchmark::State& state) {
  std::vector<CFTermSeq> cfs;
  for (long p = 2; p < 2 + state.range(1); ++p) cfs.push_back(log_of_fraction(p, 1));
  std::vector<EvalRequest> req;
  for (const CFTermSeq& cf : cfs) req.push_back({&cf, 400});
  for (auto _ : state) benchmark::DoNotOptimize(eval_batch(req, 256, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(req.size()));
  label(state);
}
BENCHMARK(BM_EvalBatch)->ArgsProduct({{0, 1}, {64, 512}})->Unit(benchmark::kMillisecond);

void BM_Quadrature(benchmark::State& state) {
  const QuadraticForm form(1, 2, -3);
  QuadratureOptions opt;
  opt.exec = mode(state);
  const HPFloat tol = HPFloat::parse("1e-60", 256);
  for (auto _ : state)
    benchmark::DoNotOptimize(quad_integral(static_cast<unsigned>(state.range(1)), form, AtRoot{}, tol, opt));
  label(state);
}
BENCHMARK(BM_Quadrature)->ArgsProduct({{0, 1}, {0, 8}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
