#pragma once

#include "ssle/agent_state.hpp"
#include "ssle/collision.hpp"
#include "ssle/partition.hpp"
#include "ssle/rng.hpp"

namespace ssle {

/// Events of one verifier-verifier interaction, reported up to the engine.
struct VerifyEvents {
    int topsRaised = 0;
    int softResets = 0;   // generation increments (spontaneous or adopted)
    int fullResets = 0;   // reset triggers
};

/// Fresh verifier-local state on entering the role: generation 0, a full
/// probation window, clean collision detection for the given rank.
VerifyState initialVerifyState(int rank, const GroupPartition& partition, const Params& params);

/// One interaction between two verifiers. Probation timers decrement first;
/// same-generation pairs run collision detection and resolve any error state
/// by soft reset (off probation) or full reset (on probation); an agent whose
/// generation trails its partner's by one adopts it when off probation, and
/// every other generation mismatch triggers a full reset of the initiator.
VerifyEvents stableVerifyStep(AgentState& u, AgentState& v, const GroupPartition& partition,
                              const Params& params, const DrawFn& draw);

}  // namespace ssle
