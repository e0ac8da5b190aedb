// Parallel ensemble kernels against the serial reference on the workloads
// that dominate the experiments: exact jump-CIR paths and MLE replicates.

#include <benchmark/benchmark.h>

#include "jcir/ensemble.hpp"
#include "jcir/experiment.hpp"
#include "jcir/inference.hpp"
#include "jcir/limits.hpp"
#include "jcir/simulate.hpp"

namespace {

using namespace jcir;

const ModelParams& bajd() {
  static const ModelParams p(1.0, 1.0, 0.5, CompoundPoisson{1.0, ExponentialJumps{2.0}}, 1.0);
  return p;
}

auto path_replicate = [](Rng& rng, std::size_t) {
  const Path path = simulate_jump_cir(bajd(), 10.0, ExactBetweenJumps{100}, rng);
  return mle_b(path_statistics(path, extract_jumps(path)), bajd().a());
};

auto v_replicate = [](Rng& rng, std::size_t) { return sample_v(bajd().with_b(-1.0), rng); };

template <class Fn>
void run(benchmark::State& state, Execution exec, Fn fn) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto out = exec == Execution::Parallel ? ensemble_parallel(n, 42, fn) : ensemble_serial(n, 42, fn);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
  state.counters["threads"] = exec == Execution::Parallel ? ensemble_threads() : 1;
}

void BM_PathsSerial(benchmark::State& s) { run(s, Execution::Serial, path_replicate); }
void BM_PathsParallel(benchmark::State& s) { run(s, Execution::Parallel, path_replicate); }
void BM_VSerial(benchmark::State& s) { run(s, Execution::Serial, v_replicate); }
void BM_VParallel(benchmark::State& s) { run(s, Execution::Parallel, v_replicate); }

}  // namespace

BENCHMARK(BM_PathsSerial)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PathsParallel)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_VSerial)->Arg(4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_VParallel)->Arg(4096)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
