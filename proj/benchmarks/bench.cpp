#include <benchmark/benchmark.h>

#include "pwlnet/pwlnet.hpp"

using namespace pwlnet;

namespace {

CpwlFunction make_target(std::size_t segments, std::uint64_t seed) {
    Rng rng(seed);
    return random_cpwl(rng, segments, 1e-4, -10.0, 10.0);
}

} // namespace

// Two-layer compilation over growing block counts, block size fixed at 4.
static void BM_CompileTwoLayer(benchmark::State& state) {
    const auto blocks = static_cast<std::size_t>(state.range(0));
    CpwlFunction target = make_target(blocks * 4, 31);
    for (auto _ : state)
        benchmark::DoNotOptimize(compile_two_layer(target, blocks, 4));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CompileTwoLayer)->RangeMultiplier(4)->Range(8, 512)->Complexity();

// Width-to-depth reshaping at full capacity for N = 5.
static void BM_CompileDeep(benchmark::State& state) {
    const auto stages = static_cast<std::size_t>(state.range(0));
    CpwlFunction target = make_target(25 * stages, 32);
    for (auto _ : state)
        benchmark::DoNotOptimize(compile_deep(target, 5, stages));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CompileDeep)->RangeMultiplier(2)->Range(1, 16)->Complexity();

// Breakpoint propagation through a deep network.
static void BM_ToCpwl(benchmark::State& state) {
    const auto stages = static_cast<std::size_t>(state.range(0));
    CpwlFunction target = make_target(25 * stages, 33);
    ReluNetwork net = compile_deep(target, 5, stages);
    for (auto _ : state)
        benchmark::DoNotOptimize(to_cpwl(net, 0.0, 1.0));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ToCpwl)->RangeMultiplier(2)->Range(1, 16)->Complexity();

// Forward evaluation throughput on a two-layer net, 1024 points per iteration.
static void BM_EvalBatch(benchmark::State& state) {
    const auto blocks = static_cast<std::size_t>(state.range(0));
    CpwlFunction target = make_target(blocks * 4, 34);
    ReluNetwork net = compile_two_layer(target, blocks, 4);
    std::vector<double> xs(1024);
    for (std::size_t i = 0; i < xs.size(); ++i)
        xs[i] = static_cast<double>(i) / static_cast<double>(xs.size() - 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(net.eval_batch(xs, xs.size()));
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * 1024);
}
BENCHMARK(BM_EvalBatch)->RangeMultiplier(4)->Range(8, 128);

BENCHMARK_MAIN();
