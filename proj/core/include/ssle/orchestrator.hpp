#pragma once

#include <optional>

#include "ssle/agent_state.hpp"
#include "ssle/partition.hpp"
#include "ssle/rng.hpp"
#include "ssle/verify.hpp"

namespace ssle {

/// What happened inside one interaction, for run accounting and traces.
struct StepEvents {
    int initiator = -1;  // sampled pair, filled by the engine
    int responder = -1;
    int topsRaised = 0;
    int softResets = 0;
    int fullResets = 0;
    int verifierEntries = 0;  // ranker-to-verifier transitions
    int awakenings = 0;       // resetter-to-ranker transitions

    void clear() { *this = StepEvents{}; }
};

/// The top-level transition function applied to an ordered pair (initiator,
/// responder). Dispatches to the reset broadcast, the ranking subprotocol or
/// the verification wrapper by role, and performs the countdown-driven
/// ranker-to-verifier transition. Total: every pair of states has a defined
/// successor.
void electLeaderStep(AgentState& u, AgentState& v, const GroupPartition& partition,
                     const Params& params, const DrawFn& draw, StepEvents& events);

/// Index of the unique verifier with rank 1, when exactly one exists.
std::optional<int> leaderOf(const std::vector<AgentState>& agents);

}  // namespace ssle
