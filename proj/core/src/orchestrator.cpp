#include "ssle/orchestrator.hpp"

#include "ssle/ranking.hpp"
#include "ssle/reset.hpp"

namespace ssle {

void electLeaderStep(AgentState& u, AgentState& v, const GroupPartition& partition,
                     const Params& params, const DrawFn& draw, StepEvents& events) {
    if (u.role() == Role::Resetting) {
        const bool uWasResetting = true;
        const bool vWasResetting = v.role() == Role::Resetting;
        propagateReset(u, v, params);
        if (uWasResetting && u.role() == Role::Ranking) events.awakenings += 1;
        if (vWasResetting && v.role() == Role::Ranking) events.awakenings += 1;
    }

    if (u.role() == Role::Ranking && v.role() == Role::Ranking) {
        assignRanksStep(u.ranker().sub, v.ranker().sub, params, draw);
        for (AgentState* a : {&u, &v}) {
            int& countdown = a->ranker().countdown;
            if (countdown > 0) countdown -= 1;
        }
    }

    // Ranker-to-verifier transition: timer ran out, or epidemic from an
    // existing verifier. The rank computed by the ranking subprotocol is the
    // only field that survives the role change.
    struct Side {
        AgentState* self;
        AgentState* other;
    };
    for (const Side& side : {Side{&u, &v}, Side{&v, &u}}) {
        AgentState& i = *side.self;
        const AgentState& j = *side.other;
        if (i.role() != Role::Ranking) continue;
        if (i.ranker().countdown == 0 || j.role() == Role::Verifying) {
            const int rank = i.ranker().sub.rank;
            VerifierState fresh;
            fresh.rank = rank;
            fresh.sub = initialVerifyState(rank, partition, params);
            i.state = fresh;
            events.verifierEntries += 1;
        }
    }

    if (u.role() == Role::Verifying && v.role() == Role::Verifying) {
        const VerifyEvents ve = stableVerifyStep(u, v, partition, params, draw);
        events.topsRaised += ve.topsRaised;
        events.softResets += ve.softResets;
        events.fullResets += ve.fullResets;
    }
}

std::optional<int> leaderOf(const std::vector<AgentState>& agents) {
    std::optional<int> leader;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const AgentState& a = agents[i];
        if (a.role() == Role::Verifying && a.verifier().rank == 1) {
            if (leader) return std::nullopt;  // rank 1 is not unique
            leader = static_cast<int>(i);
        }
    }
    return leader;
}

}  // namespace ssle
