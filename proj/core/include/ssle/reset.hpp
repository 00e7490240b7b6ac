#pragma once

#include <vector>

#include "ssle/agent_state.hpp"
#include "ssle/params.hpp"

namespace ssle {

/// Make the agent a freshly triggered resetter: (rMax, dMax). All fields of
/// the prior role are discarded. Total over every role, idempotent.
void triggerReset(AgentState& agent, const Params& params);

/// One interaction with a resetting initiator. Implements the reset
/// broadcast: infection while resetCount > 0, paired countdown by
/// max{u-1, v-1, 0}, dormancy delay, and re-initialization into the ranking
/// role (via the Reset routine) when the delay expires or a dormant agent
/// meets a computing one.
///
/// Precondition: u.role() == Role::Resetting.
void propagateReset(AgentState& u, AgentState& v, const Params& params);

/// Dormant: resetting with resetCount 0, waiting for the delay to run out.
bool isDormant(const AgentState& agent);

/// Every agent is dormant.
bool isFullyDormant(const std::vector<AgentState>& agents);

/// Some agent carries a positive reset countdown (the broadcast is live).
bool isTriggered(const std::vector<AgentState>& agents);

}  // namespace ssle
