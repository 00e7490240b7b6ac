#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssle/orchestrator.hpp"
#include "ssle/params.hpp"
#include "ssle/partition.hpp"
#include "ssle/rng.hpp"

namespace ssle {

/// Full population state: n agent states plus the interaction counter.
/// In SyntheticCoins mode each agent additionally carries a coin state
/// (kept outside the role variant; it survives role changes).
struct Configuration {
    std::vector<AgentState> agents;
    std::uint64_t interactionCount = 0;
    std::vector<CoinState> coins;  // empty in TrueRandom mode

    bool operator==(const Configuration&) const = default;
};

struct RunResult {
    std::uint64_t totalInteractions = 0;
    std::uint64_t fullResets = 0;
    std::uint64_t softResets = 0;
    std::optional<std::uint64_t> stabilizationAt;
    std::vector<std::pair<std::uint64_t, std::string>> monitorViolations;
};

/// Named read-only predicate evaluated on the configuration after every
/// step; the first step index at which it returns false is recorded.
struct Monitor {
    std::string name;
    std::function<bool(const Configuration&)> holds;
};

/// Streaming hook on the run loop. Observers see the configuration after
/// each interaction together with that interaction's events, and may ask the
/// run to stop.
class StepObserver {
public:
    virtual ~StepObserver() = default;
    virtual void onStep(const Configuration& config, const StepEvents& events) = 0;
    virtual bool wantStop() const { return false; }
};

/// Ordered pair of distinct agent indices (0-based), uniform over all
/// n(n-1) pairs in TrueRandom mode.
std::pair<int, int> samplePair(RandomStream& stream, int n);

/// The simulation context a run needs besides the configuration: parameters,
/// the rank-space partition they induce, and the seeded stream.
struct Engine {
    Params params;
    GroupPartition partition;
    RandomStream stream;

    Engine(const Params& p, std::uint64_t seed)
        : params(p), partition(p.n, p.r), stream(seed) {
        params.validate();
    }

    /// Apply one interaction in place. Samples an ordered pair, ticks coins
    /// in SyntheticCoins mode, applies the transition function, increments
    /// the interaction counter.
    void stepInPlace(Configuration& config, StepEvents& events);

    /// Pure variant of stepInPlace for the functional surface and tests.
    Configuration step(const Configuration& config);
};

using StopPredicate = std::function<bool(const Configuration&)>;

/// Drive a run: iterate steps until the stop predicate holds, an observer
/// requests a stop, or the horizon is exhausted. Monitors are evaluated
/// after every step and cannot perturb the run. Mutates `config` to the
/// final configuration.
RunResult run(Engine& engine, Configuration& config, const StopPredicate& stop,
              std::uint64_t horizon, const std::vector<Monitor>& monitors,
              const std::vector<StepObserver*>& observers = {});

/// Fresh coin states for every agent, sized for the largest draw range the
/// protocol uses (identifier space vs. the biggest group's signature space).
std::vector<CoinState> makeCoinStates(const Params& params, const GroupPartition& partition);

}  // namespace ssle
