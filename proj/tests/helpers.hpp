#pragma once

#include <memory>
#include <vector>

#include "ssle/engine.hpp"
#include "ssle/ranking.hpp"
#include "ssle/scenario.hpp"
#include "ssle/verify.hpp"

namespace ssle::test {

inline Params makeParams(int n, int r) {
    Params p(n, r);
    p.validate();
    return p;
}

/// DrawFn returning scripted values (cycling); handy for deterministic
/// protocol steps in unit tests.
inline DrawFn scriptedDraw(std::vector<std::int64_t> values) {
    auto cursor = std::make_shared<std::size_t>(0);
    auto script = std::make_shared<std::vector<std::int64_t>>(std::move(values));
    return [cursor, script](std::int64_t n, int) -> std::int64_t {
        if (script->empty()) return 1;
        const std::int64_t v = (*script)[*cursor % script->size()];
        *cursor += 1;
        return v <= n ? v : n;
    };
}

inline AgentState makeRanker(const Params& params, RankPhase phase, int countdown = -1) {
    RankerState s;
    s.countdown = countdown < 0 ? params.cMax() : countdown;
    s.sub = initialRankingState(params);
    s.sub.phase = std::move(phase);
    return AgentState{s};
}

inline AgentState makeVerifier(const Params& params, const GroupPartition& partition, int rank,
                               int generation = 0, int probationTimer = 0) {
    VerifierState s;
    s.rank = rank;
    s.sub = initialVerifyState(rank, partition, params);
    s.sub.generation = generation;
    s.sub.probationTimer = probationTimer;
    return AgentState{s};
}

inline int countDiffering(const Configuration& a, const Configuration& b) {
    int differing = 0;
    for (std::size_t i = 0; i < a.agents.size(); ++i) {
        if (!(a.agents[i] == b.agents[i])) ++differing;
    }
    return differing;
}

}  // namespace ssle::test
