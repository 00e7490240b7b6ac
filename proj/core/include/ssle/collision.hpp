#pragma once

#include "ssle/agent_state.hpp"
#include "ssle/partition.hpp"
#include "ssle/rng.hpp"

namespace ssle {

/// Outcome flags of one collision-detection interaction.
struct DcStepResult {
    bool raisedTop = false;
};

/// The clean collision-detection state q0,DC for an agent of the given rank:
/// signature, counter and all observations 1; for every governed rank in the
/// agent's group, the agent holds the p-th consecutive ID block (p = position
/// of its own rank within the group), all with content 1. Blocks of the
/// group's agents cover [idsPerRank] disjointly per rank.
DcState initDC(int rank, const GroupPartition& partition, const Params& params);

/// One interaction of the collision detector. Cross-group pairs are no-ops.
/// Within a group: equal ranks or a doubly-held message index raise the error
/// state on both agents; otherwise consistency checks, message stamping and
/// load balancing run in protocol order. Error states entering the
/// interaction are left for the caller to resolve.
DcStepResult detectCollisionStep(int rankU, DcState& u, int rankV, DcState& v,
                                 const GroupPartition& partition, const Params& params,
                                 const DrawFn& draw);

/// Raise the error state on both agents when v holds a message governed by
/// u's rank whose content differs from u's observation for that ID.
bool checkMessageConsistency(int rankU, DcState& u, DcState& v, const GroupContext& ctx);

/// Advance u's refresh counter (resampling the signature and restamping u's
/// own messages when it expires), then stamp u's signature onto every message
/// v holds that u governs, updating u's observations alongside.
/// `slot` names u's position in the interaction for the draw facade.
void updateMessages(int rankU, DcState& u, DcState& v, const GroupContext& ctx,
                    const DrawFn& draw, int slot);

/// Rebuild both message tables: for every (governed rank, content) class the
/// IDs held by either agent are split, lower IDs first, floor/ceil halves,
/// the larger half going to whichever agent has fewer rebuilt messages so far
/// (ties favor u). Conserves the message multiset; per-class counts end up
/// within one of each other.
void balanceLoad(DcState& u, DcState& v, const GroupContext& ctx);

/// Messages an agent holds, as (governing rank, id, content) triples in
/// ascending order. Test and oracle helper.
std::vector<std::tuple<int, int, std::uint32_t>> heldMessages(const DcState& dc,
                                                              const GroupContext& ctx);

}  // namespace ssle
