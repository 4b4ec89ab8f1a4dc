// Serial reference path vs OpenMP path for the hot kernels.

#include <benchmark/benchmark.h>

#include "tqftwb/frobenius.hpp"
#include "tqftwb/lie.hpp"

using namespace tqftwb;

namespace {

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

gpd::AbelianModel model_z2z3() {
  gpd::AbelianModel m;
  m.base = {"pt"};
  m.isotropy = {{2, 3}};
  return m;
}

void BM_Fingerprint(benchmark::State& state) {
  const auto m = model_z2z3();
  const auto span = frob::evaluate(m, cob::parse("(mu * id(1)) . (id(1) * delta) . delta"));
  const auto exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(gpd::fingerprint(span, exec));
}

void BM_CheckAxioms(benchmark::State& state) {
  const auto m = model_z2z3();
  frob::CheckOptions opts;
  opts.exec = exec_of(state);
  opts.functor_budget = 5000;
  opts.random_pairs = 2;
  for (auto _ : state) benchmark::DoNotOptimize(frob::check_axioms(m, opts));
}

void BM_LieSuite(benchmark::State& state) {
  lie::TrialOptions opts;
  opts.trials = 20;
  opts.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(lie::run_suite(lie::Family::sln, 4, opts));
}

}  // namespace

BENCHMARK(BM_Fingerprint)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckAxioms)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LieSuite)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
