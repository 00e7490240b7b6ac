#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace ssle {

enum class Role { Resetting, Ranking, Verifying };

// ---------------------------------------------------------------------------
// Resetting

struct ResetState {
    int resetCount = 0;  // in [0, rMax]; positive while the reset broadcast is infectious
    int delayTimer = 0;  // in [0, dMax]; equals dMax whenever resetCount > 0

    bool operator==(const ResetState&) const = default;
};

// ---------------------------------------------------------------------------
// Ranking

/// Bootstrap leader election by minimum-identifier epidemic. The identifier
/// is sampled lazily on the agent's first election interaction; until then
/// `initialized` is false and the numeric fields are meaningless.
struct BootState {
    bool initialized = false;
    std::int64_t identifier = 0;     // in [n^3]
    std::int64_t minIdentifier = 0;  // <= identifier
    int leCount = 0;                 // decremented toward 0 on election interactions
    bool leaderDone = false;         // set exactly when leCount reaches 0
    bool leaderBit = false;

    bool operator==(const BootState&) const = default;
};

struct Label {
    int deputyId = 0;  // in [r]
    int index = 0;     // in [labelPool]

    auto operator<=>(const Label&) const = default;
};

struct Sheriff {
    int lowBadge = 0;   // badge interval [lowBadge, highBadge], subinterval of [r]
    int highBadge = 0;

    bool operator==(const Sheriff&) const = default;
};

struct Deputy {
    int id = 0;       // badge in [r], unique in clean runs
    int counter = 0;  // labels issued so far, own implicit label (id, 1) included

    bool operator==(const Deputy&) const = default;
};

struct Recipient {
    std::optional<Label> label;

    bool operator==(const Recipient&) const = default;
};

struct Sleeper {
    int sleepTimer = 1;  // in [1, sleepMax]
    std::optional<Label> label;

    bool operator==(const Sleeper&) const = default;
};

struct Ranked {
    bool operator==(const Ranked&) const = default;
};

using RankPhase = std::variant<BootState, Sheriff, Deputy, Recipient, Sleeper, Ranked>;

/// State of the ranking subprotocol. `channel` broadcasts the highest label
/// each deputy is known to have issued (max-merged); it is inactive for
/// election-phase and ranked agents. `rank` starts at 1 and is written when
/// the agent wakes from sleep.
struct RankingState {
    RankPhase phase;
    std::vector<int> channel;  // size r, entries in [0, labelPool]
    int rank = 1;              // in [n]

    bool operator==(const RankingState&) const = default;
};

// ---------------------------------------------------------------------------
// Verifying

/// Non-error collision-detection state. Message tables are stored densely:
/// msgs[(governing rank - group lo) * idsPerRank + (id - 1)] with 0 = empty.
struct DcCore {
    std::uint32_t signature = 1;  // in [sigSpace]
    int counter = 1;              // in [1, sigRefresh]
    std::vector<std::uint32_t> msgs;          // groupSize * idsPerRank cells
    std::vector<std::uint32_t> observations;  // idsPerRank cells, own-rank contents

    bool operator==(const DcCore&) const = default;
};

/// Collision-detection state: either the error state (top) or a live core.
struct DcState {
    bool top = false;
    DcCore core;

    bool operator==(const DcState&) const = default;
};

struct VerifyState {
    int generation = 0;      // mod 6
    int probationTimer = 0;  // in [0, pMax]
    DcState dc;

    bool operator==(const VerifyState&) const = default;
};

// ---------------------------------------------------------------------------
// Agent

struct RankerState {
    int countdown = 0;  // in [0, cMax]; decremented on ranker-ranker interactions
    RankingState sub;

    bool operator==(const RankerState&) const = default;
};

struct VerifierState {
    int rank = 1;  // in [n], copied from the ranking state at role change, then read-only
    VerifyState sub;

    bool operator==(const VerifierState&) const = default;
};

/// One agent. The variant enforces that exactly the active role's fields
/// exist; changing role drops everything else.
struct AgentState {
    std::variant<ResetState, RankerState, VerifierState> state;

    Role role() const { return static_cast<Role>(state.index()); }

    ResetState& reset() { return std::get<ResetState>(state); }
    const ResetState& reset() const { return std::get<ResetState>(state); }
    RankerState& ranker() { return std::get<RankerState>(state); }
    const RankerState& ranker() const { return std::get<RankerState>(state); }
    VerifierState& verifier() { return std::get<VerifierState>(state); }
    const VerifierState& verifier() const { return std::get<VerifierState>(state); }

    bool operator==(const AgentState&) const = default;
};

}  // namespace ssle
