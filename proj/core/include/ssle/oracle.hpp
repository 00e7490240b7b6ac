#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssle/engine.hpp"

namespace ssle {

/// Recovery hierarchy: each level adds a property on top of the previous
/// one. C1 no resetters; C2 all verifiers; C3 equal generations; C4 all
/// probation timers zero; C5 ranks form a permutation of [n].
enum class HierarchyLevel { C0 = 0, C1, C2, C3, C4, C5 };

/// Deepest hierarchy level the configuration satisfies.
HierarchyLevel classify(const Configuration& config);

const char* hierarchyLevelName(HierarchyLevel level);

/// True when the ranks of all agents (verifiers read the verifier rank,
/// rankers the ranking-state rank) form a permutation of [n]. Resetters
/// carry no rank and fail the check.
bool ranksFormPermutation(const Configuration& config, int n);

/// Streaming safe-set surrogate over a run.
///
/// The surrogate holds at a step when (a) all agents are verifiers with a
/// correct ranking, generations take at most two adjacent values {i, i+1}
/// and every generation-i agent is off probation, and (b) every
/// generation-(i+1) agent's collision-detection state descends, within the
/// observed trace, from a clean re-initialization after its last generation
/// change. Condition (b) makes the reachability clause of the safe set
/// checkable: states re-initialized in-trace are reachable by construction.
///
/// Once the surrogate holds it must keep holding, the leader must stay
/// fixed, and no full reset may fire; the tracker records violations of all
/// three.
class SurrogateTracker : public StepObserver {
public:
    SurrogateTracker(const Configuration& initial, const GroupPartition& partition,
                     const Params& params);

    void onStep(const Configuration& config, const StepEvents& events) override;

    /// First interaction index at which the surrogate held, if any.
    std::optional<std::uint64_t> firstHold() const { return firstHold_; }

    /// Closure violations observed after the first hold.
    std::uint64_t leaderChangesAfterHold() const { return leaderChangesAfterHold_; }
    std::uint64_t fullResetsAfterHold() const { return fullResetsAfterHold_; }
    std::uint64_t unholdsAfterHold() const { return unholdsAfterHold_; }

    bool closureClean() const {
        return leaderChangesAfterHold_ == 0 && fullResetsAfterHold_ == 0 &&
               unholdsAfterHold_ == 0;
    }

private:
    bool holdsNow(const Configuration& config) const;
    void refreshAgent(const Configuration& config, int idx);

    const GroupPartition& partition_;
    const Params& params_;
    std::vector<char> clean_;    // dc descends from an in-trace q0 assignment
    std::vector<Role> prevRole_;
    std::vector<int> prevGen_;   // valid where prevRole_ == Verifying
    std::uint64_t step_ = 0;
    std::optional<std::uint64_t> firstHold_;
    std::optional<int> leaderAtHold_;
    std::uint64_t leaderChangesAfterHold_ = 0;
    std::uint64_t fullResetsAfterHold_ = 0;
    std::uint64_t unholdsAfterHold_ = 0;
};

// ---------------------------------------------------------------------------
// Exhaustive soundness exploration

/// Shrunk instance for breadth-first exploration of the collision detector:
/// one group, every ordered interaction, every signature-draw outcome.
struct SoundnessOptions {
    int groupSize = 2;
    bool duplicateRank = false;  // plant two agents on rank 1
    int idsPerRank = 2;
    std::uint32_t sigSpace = 2;
    int sigRefresh = 2;
    std::uint64_t stateBudget = 10'000'000;
};

struct SoundnessResult {
    bool topReachable = false;
    std::uint64_t statesVisited = 0;
    std::uint64_t transitions = 0;
    bool frontierExhausted = false;  // false when the state budget ran out
};

/// BFS over all reachable collision-detection configurations of one group
/// starting from the clean initialization on the given ranking. Agents of a
/// group are canonicalized by sorting, which quotients out their
/// interchangeability. The search stops early once an error state is seen.
SoundnessResult exploreSoundness(const SoundnessOptions& options);

}  // namespace ssle
