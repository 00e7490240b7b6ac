#include "ssle/oracle.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "ssle/collision.hpp"

namespace ssle {

HierarchyLevel classify(const Configuration& config) {
    const auto& agents = config.agents;

    for (const AgentState& a : agents) {
        if (a.role() == Role::Resetting) return HierarchyLevel::C0;
    }
    for (const AgentState& a : agents) {
        if (a.role() != Role::Verifying) return HierarchyLevel::C1;
    }

    const int gen0 = agents.front().verifier().sub.generation;
    for (const AgentState& a : agents) {
        if (a.verifier().sub.generation != gen0) return HierarchyLevel::C2;
    }
    for (const AgentState& a : agents) {
        if (a.verifier().sub.probationTimer != 0) return HierarchyLevel::C3;
    }
    if (!ranksFormPermutation(config, static_cast<int>(agents.size())))
        return HierarchyLevel::C4;
    return HierarchyLevel::C5;
}

const char* hierarchyLevelName(HierarchyLevel level) {
    switch (level) {
        case HierarchyLevel::C0: return "C0";
        case HierarchyLevel::C1: return "C1";
        case HierarchyLevel::C2: return "C2";
        case HierarchyLevel::C3: return "C3";
        case HierarchyLevel::C4: return "C4";
        case HierarchyLevel::C5: return "C5";
    }
    return "?";
}

bool ranksFormPermutation(const Configuration& config, int n) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (const AgentState& a : config.agents) {
        int rank = 0;
        if (a.role() == Role::Verifying) {
            rank = a.verifier().rank;
        } else if (a.role() == Role::Ranking) {
            rank = a.ranker().sub.rank;
        } else {
            return false;
        }
        if (rank < 1 || rank > n || seen[static_cast<std::size_t>(rank - 1)]) return false;
        seen[static_cast<std::size_t>(rank - 1)] = 1;
    }
    return true;
}

// ---------------------------------------------------------------------------
// SurrogateTracker

SurrogateTracker::SurrogateTracker(const Configuration& initial, const GroupPartition& partition,
                                   const Params& params)
    : partition_(partition), params_(params) {
    const std::size_t n = initial.agents.size();
    clean_.assign(n, 0);
    prevRole_.assign(n, Role::Resetting);
    prevGen_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const AgentState& a = initial.agents[i];
        prevRole_[i] = a.role();
        if (a.role() == Role::Verifying) {
            const VerifierState& v = a.verifier();
            prevGen_[i] = v.sub.generation;
            // A state equal to the clean initialization descends from it.
            clean_[i] = v.sub.dc == initDC(v.rank, partition_, params_) ? 1 : 0;
        }
    }
    if (holdsNow(initial)) {
        firstHold_ = 0;
        leaderAtHold_ = leaderOf(initial.agents);
    }
}

void SurrogateTracker::refreshAgent(const Configuration& config, int idx) {
    if (idx < 0) return;
    const std::size_t i = static_cast<std::size_t>(idx);
    const AgentState& a = config.agents[i];
    if (a.role() != Role::Verifying) {
        clean_[i] = 0;
    } else {
        const int gen = a.verifier().sub.generation;
        if (prevRole_[i] != Role::Verifying || prevGen_[i] != gen) {
            // Entered the role or changed generation: dc was re-initialized.
            clean_[i] = 1;
        }
        prevGen_[i] = gen;
    }
    prevRole_[i] = a.role();
}

void SurrogateTracker::onStep(const Configuration& config, const StepEvents& events) {
    step_ += 1;
    refreshAgent(config, events.initiator);
    refreshAgent(config, events.responder);

    if (!firstHold_) {
        if (holdsNow(config)) {
            firstHold_ = step_;
            leaderAtHold_ = leaderOf(config.agents);
        }
        return;
    }

    if (events.fullResets > 0) fullResetsAfterHold_ += 1;
    if (leaderOf(config.agents) != leaderAtHold_) leaderChangesAfterHold_ += 1;
    if (!holdsNow(config)) unholdsAfterHold_ += 1;
}

bool SurrogateTracker::holdsNow(const Configuration& config) const {
    const int n = static_cast<int>(config.agents.size());
    for (const AgentState& a : config.agents) {
        if (a.role() != Role::Verifying) return false;
    }
    if (!ranksFormPermutation(config, n)) return false;

    int gensMask = 0;
    for (const AgentState& a : config.agents) gensMask |= 1 << a.verifier().sub.generation;

    // Candidate base generations i: the structure requires generations
    // within {i, i+1}, generation-i agents off probation, generation-(i+1)
    // agents trace-clean.
    for (int i = 0; i < 6; ++i) {
        const int allowed = (1 << i) | (1 << ((i + 1) % 6));
        if ((gensMask & ~allowed) != 0) continue;
        bool ok = true;
        for (std::size_t a = 0; a < config.agents.size() && ok; ++a) {
            const VerifierState& v = config.agents[a].verifier();
            if (v.sub.generation == i) {
                ok = v.sub.probationTimer == 0;
            } else {
                ok = clean_[a] != 0;
            }
        }
        if (ok) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Exhaustive soundness exploration

namespace {

struct GroupConfig {
    std::vector<int> ranks;
    std::vector<DcState> states;
};

void encodeState(const DcState& s, std::string& out) {
    auto put32 = [&out](std::uint32_t v) {
        out.push_back(static_cast<char>(v & 0xff));
        out.push_back(static_cast<char>((v >> 8) & 0xff));
        out.push_back(static_cast<char>((v >> 16) & 0xff));
        out.push_back(static_cast<char>((v >> 24) & 0xff));
    };
    out.push_back(s.top ? 1 : 0);
    if (s.top) return;
    put32(s.core.signature);
    put32(static_cast<std::uint32_t>(s.core.counter));
    for (std::uint32_t v : s.core.msgs) put32(v);
    for (std::uint32_t v : s.core.observations) put32(v);
}

std::string canonicalKey(const GroupConfig& config) {
    std::vector<std::pair<int, std::string>> parts(config.ranks.size());
    for (std::size_t i = 0; i < config.ranks.size(); ++i) {
        parts[i].first = config.ranks[i];
        encodeState(config.states[i], parts[i].second);
    }
    std::sort(parts.begin(), parts.end());
    std::string key;
    for (auto& [rank, enc] : parts) {
        key.push_back(static_cast<char>(rank));
        key += enc;
    }
    return key;
}

bool anyTop(const GroupConfig& config) {
    for (const DcState& s : config.states) {
        if (s.top) return true;
    }
    return false;
}

}  // namespace

SoundnessResult exploreSoundness(const SoundnessOptions& options) {
    const int g = options.groupSize;
    if (g < 1) throw std::invalid_argument("exploreSoundness: group size must be positive");
    if (options.duplicateRank && g < 2)
        throw std::invalid_argument("exploreSoundness: duplicate rank needs at least 2 agents");

    // Embed one group of the requested size: n = 2g, r = g puts ranks
    // {1, ..., g} into a single block.
    Params params(2 * g > 3 ? 2 * g : 4, 2 * g > 3 ? g : 2);
    params.idsPerRankOverride = options.idsPerRank;
    params.sigSpaceOverride = options.sigSpace;
    params.sigRefreshOverride = options.sigRefresh;
    params.validate();
    const GroupPartition partition(params.n, params.r);

    GroupConfig initial;
    for (int i = 1; i <= g; ++i) {
        initial.ranks.push_back(options.duplicateRank && i == 2 ? 1 : i);
    }
    for (int rank : initial.ranks) initial.states.push_back(initDC(rank, partition, params));

    SoundnessResult result;
    std::unordered_set<std::string> visited;
    std::deque<GroupConfig> frontier;
    visited.insert(canonicalKey(initial));
    frontier.push_back(initial);
    result.statesVisited = 1;

    if (anyTop(initial)) {
        result.topReachable = true;
        return result;
    }

    // Non-determinism: the scheduler's pair choice and, when a refresh
    // counter expires, the signature draw. Draw counts per transition are
    // discovered with a probe run (they depend only on the pre-state), then
    // every outcome combination is expanded.
    std::vector<std::int64_t> drawScript;
    std::size_t drawCursor = 0;
    std::size_t drawsUsed = 0;
    const DrawFn scripted = [&](std::int64_t n, int) -> std::int64_t {
        ++drawsUsed;
        if (drawCursor < drawScript.size()) return drawScript[drawCursor++];
        return 1;  // probe run: count draws, any in-range value
    };

    while (!frontier.empty()) {
        const GroupConfig current = frontier.front();
        frontier.pop_front();

        for (int a = 0; a < g; ++a) {
            for (int b = 0; b < g; ++b) {
                if (a == b) continue;

                // Probe: how many draws does this ordered interaction make?
                GroupConfig probe = current;
                drawScript.clear();
                drawCursor = 0;
                drawsUsed = 0;
                detectCollisionStep(probe.ranks[a], probe.states[a], probe.ranks[b],
                                    probe.states[b], partition, params, scripted);
                const std::size_t draws = drawsUsed;

                const std::uint64_t combos =
                    draws == 0 ? 1
                               : draws == 1 ? options.sigSpace
                                            : static_cast<std::uint64_t>(options.sigSpace) *
                                                  options.sigSpace;
                for (std::uint64_t combo = 0; combo < combos; ++combo) {
                    GroupConfig next = current;
                    drawScript.clear();
                    if (draws >= 1) drawScript.push_back(static_cast<std::int64_t>(combo % options.sigSpace) + 1);
                    if (draws >= 2) drawScript.push_back(static_cast<std::int64_t>(combo / options.sigSpace) + 1);
                    drawCursor = 0;
                    drawsUsed = 0;
                    detectCollisionStep(next.ranks[a], next.states[a], next.ranks[b],
                                        next.states[b], partition, params, scripted);
                    result.transitions += 1;

                    std::string key = canonicalKey(next);
                    if (!visited.insert(std::move(key)).second) continue;
                    result.statesVisited += 1;

                    if (anyTop(next)) {
                        result.topReachable = true;
                        return result;  // error state found; frontier abandoned
                    }
                    if (result.statesVisited > options.stateBudget) {
                        result.frontierExhausted = false;
                        return result;
                    }
                    frontier.push_back(std::move(next));
                }
            }
        }
    }

    result.frontierExhausted = true;
    return result;
}

}  // namespace ssle
