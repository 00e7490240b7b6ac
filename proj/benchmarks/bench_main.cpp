#include <benchmark/benchmark.h>

#include "ssle/collision.hpp"
#include "ssle/experiment.hpp"

using namespace ssle;

namespace {

/// Steady-state interaction throughput: all agents verifying, collision
/// detection doing the heavy lifting.
void BM_VerifierStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int r = static_cast<int>(state.range(1));
    Scenario s;
    s.kind = ScenarioKind::CorrectRankedVerifiers;
    s.params = Params(n, r);
    Configuration config = buildScenario(s, 11);
    Engine engine(s.params, 12);
    StepEvents events;
    for (auto _ : state) {
        engine.stepInPlace(config, events);
        benchmark::DoNotOptimize(config.interactionCount);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_VerifierStep)->Args({8, 2})->Args({16, 8})->Args({32, 16});

/// Mixed-phase throughput of a full run starting at dormancy.
void BM_ProtocolFromDormant(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Scenario s;
    s.kind = ScenarioKind::FullyDormant;
    s.params = Params(n, n / 2);
    Configuration config = buildScenario(s, 21);
    Engine engine(s.params, 22);
    StepEvents events;
    for (auto _ : state) {
        engine.stepInPlace(config, events);
        benchmark::DoNotOptimize(config.interactionCount);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_ProtocolFromDormant)->Arg(16)->Arg(32);

/// The load balancer in isolation, on clean same-group tables.
void BM_BalanceLoad(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int r = n / 2;
    Params params(n, r);
    const GroupPartition partition(n, r);
    const GroupContext ctx = groupContext(partition, params, 1);
    DcState u = initDC(1, partition, params);
    DcState v = initDC(2, partition, params);
    for (auto _ : state) {
        balanceLoad(u, v, ctx);
        benchmark::DoNotOptimize(u.core.msgs.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_BalanceLoad)->Arg(8)->Arg(16)->Arg(32);

/// End-to-end stabilization from a clean trigger at desk scale.
void BM_CleanTriggerStabilization(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Scenario s;
    s.kind = ScenarioKind::CleanTriggered;
    s.params = Params(n, 2);
    s.horizon = 1000000;
    std::uint64_t seed = 31;
    for (auto _ : state) {
        Configuration config = buildScenario(s, seed);
        Engine engine(s.params, seed + 1);
        RunRecorder recorder(config, defaultConfirmWindow(s.params), false, false);
        run(engine, config, nullptr, s.horizon, {}, {&recorder});
        benchmark::DoNotOptimize(config.interactionCount);
        ++seed;
    }
}
BENCHMARK(BM_CleanTriggerStabilization)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
