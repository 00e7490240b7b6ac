#include "ssle/reset.hpp"

#include "ssle/ranking.hpp"

namespace ssle {

namespace {

/// The Reset routine: re-initialize a resetter into the ranking role with
/// the clean election state and a full countdown.
void resetToRanking(AgentState& agent, const Params& params) {
    RankerState fresh;
    fresh.countdown = params.cMax();
    fresh.sub = initialRankingState(params);
    agent.state = fresh;
}

}  // namespace

void triggerReset(AgentState& agent, const Params& params) {
    ResetState s;
    s.resetCount = params.rMax();
    s.delayTimer = params.dMax();
    agent.state = s;
}

bool isDormant(const AgentState& agent) {
    return agent.role() == Role::Resetting && agent.reset().resetCount == 0;
}

bool isFullyDormant(const std::vector<AgentState>& agents) {
    for (const AgentState& a : agents) {
        if (!isDormant(a)) return false;
    }
    return true;
}

bool isTriggered(const std::vector<AgentState>& agents) {
    for (const AgentState& a : agents) {
        if (a.role() == Role::Resetting && a.reset().resetCount > 0) return true;
    }
    return false;
}

void propagateReset(AgentState& u, AgentState& v, const Params& params) {
    const int dMax = params.dMax();

    // Dormancy at entry decides the "count just became 0" branch below.
    const bool uWasDormant = isDormant(u);
    const bool vWasDormant = isDormant(v);

    if (u.reset().resetCount > 0 && v.role() != Role::Resetting) {
        ResetState infected;
        infected.resetCount = 0;
        infected.delayTimer = dMax;
        v.state = infected;
    }

    if (v.role() == Role::Resetting) {
        int merged = u.reset().resetCount - 1;
        if (v.reset().resetCount - 1 > merged) merged = v.reset().resetCount - 1;
        if (merged < 0) merged = 0;
        u.reset().resetCount = merged;
        v.reset().resetCount = merged;
        // Positive counts always carry a full delay window.
        if (merged > 0) {
            u.reset().delayTimer = dMax;
            v.reset().delayTimer = dMax;
        }
    }

    struct Side {
        AgentState* self;
        AgentState* other;
        bool wasDormant;
    };
    const Side sides[2] = {{&u, &v, uWasDormant}, {&v, &u, vWasDormant}};

    for (const Side& side : sides) {
        AgentState& i = *side.self;
        AgentState& j = *side.other;
        if (i.role() != Role::Resetting || i.reset().resetCount != 0) continue;

        if (!side.wasDormant) {
            i.reset().delayTimer = dMax;  // count just became 0
        } else if (i.reset().delayTimer > 0) {
            i.reset().delayTimer -= 1;
        }

        if (i.reset().delayTimer == 0 || j.role() != Role::Resetting) {
            resetToRanking(i, params);
        }
    }
}

}  // namespace ssle
