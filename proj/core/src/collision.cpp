#include "ssle/collision.hpp"

#include <algorithm>
#include <tuple>

namespace ssle {

namespace {

std::size_t cellIndex(const GroupContext& ctx, int govRank, int id) {
    return static_cast<std::size_t>(govRank - ctx.lo) * static_cast<std::size_t>(ctx.idsPerRank) +
           static_cast<std::size_t>(id - 1);
}

void raiseTop(DcState& u, DcState& v) {
    u = DcState{true, DcCore{}};
    v = DcState{true, DcCore{}};
}

}  // namespace

DcState initDC(int rank, const GroupPartition& partition, const Params& params) {
    const GroupContext ctx = groupContext(partition, params, rank);

    DcState s;
    s.top = false;
    s.core.signature = 1;
    s.core.counter = 1;
    s.core.observations.assign(static_cast<std::size_t>(ctx.idsPerRank), 1);
    s.core.msgs.assign(
        static_cast<std::size_t>(ctx.size) * static_cast<std::size_t>(ctx.idsPerRank), 0);

    // The group's agents split [idsPerRank] into consecutive blocks, one per
    // position; the agent at position p holds the p-th block for every rank
    // it shares a group with. Blocks cover the ID space disjointly.
    const int p = partition.rankWithinGroup(rank);
    const int q = ctx.idsPerRank / ctx.size;
    const int rem = ctx.idsPerRank % ctx.size;
    const int idLo = (p - 1) * q + std::min(p - 1, rem) + 1;
    const int idHi = p * q + std::min(p, rem);

    for (int gi = 0; gi < ctx.size; ++gi) {
        for (int id = idLo; id <= idHi; ++id) {
            s.core.msgs[cellIndex(ctx, ctx.lo + gi, id)] = 1;
        }
    }
    return s;
}

bool checkMessageConsistency(int rankU, DcState& u, DcState& v, const GroupContext& ctx) {
    const std::size_t row = cellIndex(ctx, rankU, 1);
    for (int j = 0; j < ctx.idsPerRank; ++j) {
        const std::uint32_t content = v.core.msgs[row + static_cast<std::size_t>(j)];
        if (content != 0 && content != u.core.observations[static_cast<std::size_t>(j)]) {
            raiseTop(u, v);
            return true;
        }
    }
    return false;
}

void updateMessages(int rankU, DcState& u, DcState& v, const GroupContext& ctx,
                    const DrawFn& draw, int slot) {
    DcCore& core = u.core;
    const std::size_t row = cellIndex(ctx, rankU, 1);

    core.counter += 1;
    if (core.counter >= ctx.sigRefresh) {
        core.signature = static_cast<std::uint32_t>(draw(ctx.sigSpace, slot));
        core.counter = 1;
        for (int j = 0; j < ctx.idsPerRank; ++j) {
            std::uint32_t& cell = core.msgs[row + static_cast<std::size_t>(j)];
            if (cell != 0) {
                cell = core.signature;
                core.observations[static_cast<std::size_t>(j)] = core.signature;
            }
        }
    }

    for (int j = 0; j < ctx.idsPerRank; ++j) {
        std::uint32_t& cell = v.core.msgs[row + static_cast<std::size_t>(j)];
        if (cell != 0) {
            cell = core.signature;
            core.observations[static_cast<std::size_t>(j)] = core.signature;
        }
    }
}

void balanceLoad(DcState& u, DcState& v, const GroupContext& ctx) {
    const std::size_t rowLen = static_cast<std::size_t>(ctx.idsPerRank);
    std::vector<std::uint32_t> freshU(u.core.msgs.size(), 0);
    std::vector<std::uint32_t> freshV(v.core.msgs.size(), 0);

    // (content, id) entries of one governed rank, both agents pooled.
    std::vector<std::pair<std::uint32_t, int>> entries;
    entries.reserve(64);

    long long uCount = 0;
    long long vCount = 0;

    for (int gi = 0; gi < ctx.size; ++gi) {
        const std::size_t row = static_cast<std::size_t>(gi) * rowLen;
        entries.clear();
        for (int j = 0; j < ctx.idsPerRank; ++j) {
            if (std::uint32_t c = u.core.msgs[row + static_cast<std::size_t>(j)]; c != 0)
                entries.emplace_back(c, j);
            if (std::uint32_t c = v.core.msgs[row + static_cast<std::size_t>(j)]; c != 0)
                entries.emplace_back(c, j);
        }
        std::sort(entries.begin(), entries.end());

        std::size_t lo = 0;
        while (lo < entries.size()) {
            std::size_t hi = lo;
            while (hi < entries.size() && entries[hi].first == entries[lo].first) ++hi;
            const std::size_t count = hi - lo;
            const std::size_t nFloor = count / 2;

            // Lower IDs form the floor half; the ceil half lands on the agent
            // with fewer rebuilt messages so far, ties going to u.
            const bool uGetsCeil = uCount <= vCount;
            std::vector<std::uint32_t>& floorDst = uGetsCeil ? freshV : freshU;
            std::vector<std::uint32_t>& ceilDst = uGetsCeil ? freshU : freshV;
            for (std::size_t k = lo; k < lo + nFloor; ++k)
                floorDst[row + static_cast<std::size_t>(entries[k].second)] = entries[k].first;
            for (std::size_t k = lo + nFloor; k < hi; ++k)
                ceilDst[row + static_cast<std::size_t>(entries[k].second)] = entries[k].first;
            if (uGetsCeil) {
                uCount += static_cast<long long>(count - nFloor);
                vCount += static_cast<long long>(nFloor);
            } else {
                uCount += static_cast<long long>(nFloor);
                vCount += static_cast<long long>(count - nFloor);
            }
            lo = hi;
        }
    }

    u.core.msgs = std::move(freshU);
    v.core.msgs = std::move(freshV);
}

DcStepResult detectCollisionStep(int rankU, DcState& u, int rankV, DcState& v,
                                 const GroupPartition& partition, const Params& params,
                                 const DrawFn& draw) {
    DcStepResult result;

    if (!partition.sameGroup(rankU, rankV)) return result;
    if (u.top || v.top) return result;  // standing errors resolve in the wrapper

    const GroupContext ctx = groupContext(partition, params, rankU);

    if (rankU == rankV) {
        raiseTop(u, v);
        result.raisedTop = true;
        return result;
    }
    for (std::size_t k = 0; k < u.core.msgs.size(); ++k) {
        if (u.core.msgs[k] != 0 && v.core.msgs[k] != 0) {
            raiseTop(u, v);
            result.raisedTop = true;
            return result;
        }
    }

    if (checkMessageConsistency(rankU, u, v, ctx) || checkMessageConsistency(rankV, v, u, ctx)) {
        result.raisedTop = true;
        return result;
    }

    updateMessages(rankU, u, v, ctx, draw, 0);
    updateMessages(rankV, v, u, ctx, draw, 1);
    balanceLoad(u, v, ctx);
    return result;
}

std::vector<std::tuple<int, int, std::uint32_t>> heldMessages(const DcState& dc,
                                                              const GroupContext& ctx) {
    std::vector<std::tuple<int, int, std::uint32_t>> out;
    if (dc.top) return out;
    for (int gi = 0; gi < ctx.size; ++gi) {
        for (int id = 1; id <= ctx.idsPerRank; ++id) {
            const std::uint32_t c = dc.core.msgs[cellIndex(ctx, ctx.lo + gi, id)];
            if (c != 0) out.emplace_back(ctx.lo + gi, id, c);
        }
    }
    return out;
}

}  // namespace ssle
