#pragma once

#include "ssle/agent_state.hpp"
#include "ssle/params.hpp"
#include "ssle/rng.hpp"

namespace ssle {

/// The clean initial ranking state q0,AR: in election with no identifier
/// sampled yet, all channels zero, rank 1.
RankingState initialRankingState(const Params& params);

/// One ranking interaction. Dispatches to election / sleep / deputize /
/// labeling, then max-merges channels and puts agents to sleep once the
/// merged channel certifies that all n labels are out.
///
/// `draw` supplies the identifier sample for lazily initialized election
/// agents (slot 0 = u, slot 1 = v).
void assignRanksStep(RankingState& u, RankingState& v, const Params& params, const DrawFn& draw);

/// Rank of a label under the lexicographic ordering of the certified label
/// set {(i, j) : j <= channel[i]}. Total: labels outside the certified set
/// and absent labels leave `fallback` in place (clamped into [n]).
int rankFromLabel(const std::optional<Label>& label, const std::vector<int>& channel,
                  int fallback, int n);

}  // namespace ssle
