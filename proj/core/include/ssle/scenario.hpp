#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssle/engine.hpp"

namespace ssle {

enum class ScenarioKind {
    CleanTriggered,          ///< agent 1 freshly triggered, the rest clean rankers
    FullyDormant,            ///< every agent a dormant resetter
    CorrectRankedVerifiers,  ///< correct ranking, clean collision detection
    DuplicateRanks,          ///< k agents share one rank, otherwise clean verifiers
    CorruptedMessages,       ///< k circulating-message cells flipped
    MixedGenerations,        ///< correct ranking, generations spread over Z6
    UniformRandomStates,     ///< every field drawn u.a.r. within its declared range
    Custom,                  ///< configuration loaded from a JSON file
};

const char* scenarioKindName(ScenarioKind kind);
ScenarioKind scenarioKindFromName(const std::string& name);

struct Scenario {
    ScenarioKind kind = ScenarioKind::CleanTriggered;
    Params params;
    std::uint64_t seed = 1;
    std::uint64_t trials = 1;
    std::uint64_t horizon = 100000;
    int duplicates = 2;        // duplicateRanks(k)
    int corruptedCells = 3;    // corruptedMessages(k)
    int generationSpread = 6;  // mixedGenerations: agent i starts in generation i mod spread
    std::string customFile;
};

/// Build the scenario's initial configuration. All generator randomness is
/// derived from `seed`; unsatisfiable scenarios throw std::invalid_argument.
Configuration buildScenario(const Scenario& scenario, std::uint64_t seed);

/// Type-invariant check over a configuration; returns human-readable
/// descriptions of every violation found (empty means valid).
std::vector<std::string> validateConfiguration(const Configuration& config,
                                               const GroupPartition& partition,
                                               const Params& params);

/// Serialize a configuration to / from the JSON layout used by the custom
/// scenario kind (documented in the README).
std::string configurationToJson(const Configuration& config);
Configuration configurationFromJson(const std::string& text, const Params& params);

}  // namespace ssle
