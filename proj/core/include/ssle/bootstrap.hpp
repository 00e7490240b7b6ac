#pragma once

#include "ssle/agent_state.hpp"
#include "ssle/params.hpp"

namespace ssle {

/// Sample the agent's identifier and start its election timer. Fired lazily
/// on the agent's first election interaction.
BootState bootInit(std::int64_t identifierDraw, const Params& params);

/// One election-vs-election interaction: two-way minimum epidemic, timers
/// decrement (floored at 0), and an agent whose timer reaches 0 decides
/// whether it holds the minimum. Decisions are one-shot; the minimum keeps
/// propagating through decided agents.
void bootStep(BootState& u, BootState& v);

}  // namespace ssle
