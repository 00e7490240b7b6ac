#include "ssle/partition.hpp"

#include <stdexcept>

namespace ssle {

GroupPartition::GroupPartition(int n, int r) : n_(n) {
    if (n < 2 || r < 1 || r > n / 2)
        throw std::invalid_argument("GroupPartition: require n >= 2 and 1 <= r <= n/2");

    int lo = 1;
    while (lo <= n) {
        int hi = lo + r - 1 < n ? lo + r - 1 : n;
        blockLo_.push_back(lo);
        blockHi_.push_back(hi);
        lo = hi + 1;
    }

    // A short trailing block is merged with its predecessor and the union is
    // split into near-halves, keeping every size within {floor(r/2), ..., r}.
    int last = blockCount() - 1;
    if (last >= 1) {
        int tail = blockHi_[last] - blockLo_[last] + 1;
        if (tail < r / 2) {
            int unionLo = blockLo_[last - 1];
            int unionHi = blockHi_[last];
            int total = unionHi - unionLo + 1;
            int firstHalf = (total + 1) / 2;
            blockLo_[last - 1] = unionLo;
            blockHi_[last - 1] = unionLo + firstHalf - 1;
            blockLo_[last] = unionLo + firstHalf;
            blockHi_[last] = unionHi;
        }
    }

    blockIndex_.assign(static_cast<std::size_t>(n), 0);
    for (int b = 0; b < blockCount(); ++b) {
        for (int rank = blockLo_[b]; rank <= blockHi_[b]; ++rank) {
            blockIndex_[rank - 1] = b;
        }
    }
}

GroupContext groupContext(const GroupPartition& partition, const Params& params, int rank) {
    GroupContext ctx;
    ctx.lo = partition.groupLo(rank);
    ctx.size = partition.groupSize(rank);
    ctx.idsPerRank = params.idsPerRankFor(ctx.size);
    ctx.sigSpace = params.sigSpaceFor(ctx.size);
    ctx.sigRefresh = params.sigRefreshFor(ctx.size);
    return ctx;
}

}  // namespace ssle
