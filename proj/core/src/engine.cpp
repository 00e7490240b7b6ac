#include "ssle/engine.hpp"

#include <stdexcept>

namespace ssle {

std::pair<int, int> samplePair(RandomStream& stream, int n) {
    if (n < 2) throw std::invalid_argument("samplePair: population must have at least 2 agents");
    const int i = static_cast<int>(stream.below(static_cast<std::uint64_t>(n)));
    int j = static_cast<int>(stream.below(static_cast<std::uint64_t>(n - 1)));
    if (j >= i) ++j;
    return {i, j};
}

std::vector<CoinState> makeCoinStates(const Params& params, const GroupPartition& partition) {
    std::int64_t maxN = params.idSpace();
    for (int b = 0; b < partition.blockCount(); ++b) {
        const int size = partition.blockHiAt(b) - partition.blockLoAt(b) + 1;
        const std::int64_t sig = static_cast<std::int64_t>(params.sigSpaceFor(size));
        if (sig > maxN) maxN = sig;
    }
    return std::vector<CoinState>(static_cast<std::size_t>(params.n), makeCoinState(maxN));
}

void Engine::stepInPlace(Configuration& config, StepEvents& events) {
    events.clear();
    const auto [i, j] = samplePair(stream, params.n);
    events.initiator = i;
    events.responder = j;

    CoinState* ci = nullptr;
    CoinState* cj = nullptr;
    if (params.rngMode == RngMode::SyntheticCoins) {
        ci = &config.coins[static_cast<std::size_t>(i)];
        cj = &config.coins[static_cast<std::size_t>(j)];
        // Both agents harvest the partner's pre-interaction coin bit.
        const std::uint8_t bi = ci->coin;
        const std::uint8_t bj = cj->coin;
        *ci = tickCoin(*ci, bj);
        *cj = tickCoin(*cj, bi);
    }

    const DrawFn draw = makeDrawFn(params.rngMode, stream, ci, cj);
    electLeaderStep(config.agents[static_cast<std::size_t>(i)],
                    config.agents[static_cast<std::size_t>(j)], partition, params, draw, events);
    config.interactionCount += 1;
}

Configuration Engine::step(const Configuration& config) {
    Configuration next = config;
    StepEvents events;
    stepInPlace(next, events);
    return next;
}

RunResult run(Engine& engine, Configuration& config, const StopPredicate& stop,
              std::uint64_t horizon, const std::vector<Monitor>& monitors,
              const std::vector<StepObserver*>& observers) {
    if (horizon < 1) throw std::invalid_argument("run: horizon must be at least 1");

    RunResult result;
    if (stop && stop(config)) return result;

    std::vector<bool> violated(monitors.size(), false);
    StepEvents events;

    for (std::uint64_t t = 1; t <= horizon; ++t) {
        engine.stepInPlace(config, events);
        result.totalInteractions = t;
        result.fullResets += static_cast<std::uint64_t>(events.fullResets);
        result.softResets += static_cast<std::uint64_t>(events.softResets);

        for (std::size_t m = 0; m < monitors.size(); ++m) {
            if (!violated[m] && !monitors[m].holds(config)) {
                violated[m] = true;
                result.monitorViolations.emplace_back(t, monitors[m].name);
            }
        }

        bool observerStop = false;
        for (StepObserver* obs : observers) {
            obs->onStep(config, events);
            observerStop = observerStop || obs->wantStop();
        }
        if (observerStop) break;
        if (stop && stop(config)) break;
    }
    return result;
}

}  // namespace ssle
