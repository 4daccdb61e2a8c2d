#include <benchmark/benchmark.h>

#include "flapex/expansion.hpp"
#include "flapex/motion.hpp"
#include "flapex/obstruction.hpp"
#include "flapex/search.hpp"

using namespace flapex;

namespace {

FlappedPair pair_of(int d) {
    return build_flapped_pair(make_flap_spec(regular_simplex(d), 0.5));
}

void BM_RegularSimplex(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(regular_simplex(d));
}
BENCHMARK(BM_RegularSimplex)->Arg(4)->Arg(16)->Arg(64);

void BM_SymEigenGram(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const FlappedPair pair = pair_of(d);
    const SymMatrix gram = centered_gram(distance_matrix(pair.p.points));
    for (auto _ : state) benchmark::DoNotOptimize(sym_eigen(gram, 1e-12));
}
BENCHMARK(BM_SymEigenGram)->Arg(2)->Arg(4)->Arg(6);

void BM_ExpansionReport(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const FlappedPair pair = pair_of(d);
    for (auto _ : state)
        benchmark::DoNotOptimize(expansion_report(pair.p, pair.q, 1e-9));
}
BENCHMARK(BM_ExpansionReport)->Arg(2)->Arg(4)->Arg(6);

void BM_MonotonicityReport(benchmark::State& state) {
    const FlappedPair pair = pair_of(3);
    const MotionSample sample = sample_motion(alexander_motion(pair.p, pair.q), 200);
    for (auto _ : state) benchmark::DoNotOptimize(monotonicity_report(sample, 1e-9));
}
BENCHMARK(BM_MonotonicityReport);

void BM_ObstructionPipeline(benchmark::State& state) {
    const FlappedPair pair = pair_of(2);
    const MotionSample sample =
        truncate_sample(sample_motion(alexander_motion(pair.p, pair.q), 200), 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(obstruction_pipeline(sample, pair.spec, 1e-9));
}
BENCHMARK(BM_ObstructionPipeline);

void BM_SearchIterations(benchmark::State& state) {
    const FlappedPair pair = pair_of(2);
    SearchOptions options;
    options.ambient_dim = 3;
    options.waypoint_count = 8;
    options.budget = static_cast<int>(state.range(0));
    options.restarts = 1;
    options.seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(optimize_expansion_path(pair.p, pair.q, options));
}
BENCHMARK(BM_SearchIterations)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
