#pragma once

#include <vector>

#include "ssle/params.hpp"

namespace ssle {

/// Partition of the rank space [n] into ceil(n/r) consecutive blocks with
/// sizes in {floor(r/2), ..., r}. The partition is a pure function of (n, r)
/// and is baked into the transition function, never exchanged between agents.
///
/// Construction: greedy blocks of size r; when the trailing remainder block
/// would fall below floor(r/2), the last full block and the remainder are
/// merged and re-split into halves, which keeps both within the size bounds.
class GroupPartition {
public:
    GroupPartition() = default;
    GroupPartition(int n, int r);

    int n() const { return n_; }
    int blockCount() const { return static_cast<int>(blockLo_.size()); }

    /// Lowest / highest rank of the block containing `rank` (1-based ranks).
    int groupLo(int rank) const { return blockLo_[blockIndex_[rank - 1]]; }
    int groupHi(int rank) const { return blockHi_[blockIndex_[rank - 1]]; }
    int groupSize(int rank) const { return groupHi(rank) - groupLo(rank) + 1; }

    bool sameGroup(int rankA, int rankB) const {
        return blockIndex_[rankA - 1] == blockIndex_[rankB - 1];
    }

    /// 1-based position of a rank inside its (sorted, consecutive) block.
    int rankWithinGroup(int rank) const { return rank - groupLo(rank) + 1; }

    int blockLoAt(int blockIdx) const { return blockLo_[blockIdx]; }
    int blockHiAt(int blockIdx) const { return blockHi_[blockIdx]; }

private:
    int n_ = 0;
    std::vector<int> blockLo_;
    std::vector<int> blockHi_;
    std::vector<int> blockIndex_;  // rank-1 -> block index
};

/// Per-group constants used by the collision-detection transition.
struct GroupContext {
    int lo = 0;              ///< lowest rank of the group
    int size = 0;            ///< number of ranks in the group
    int idsPerRank = 0;      ///< circulating-message IDs per governed rank
    std::uint32_t sigSpace = 0;
    int sigRefresh = 0;
};

GroupContext groupContext(const GroupPartition& partition, const Params& params, int rank);

}  // namespace ssle
