#include "ssle/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ssle/collision.hpp"
#include "ssle/ranking.hpp"
#include "ssle/reset.hpp"
#include "ssle/verify.hpp"

namespace ssle {

namespace {

constexpr std::uint64_t kGeneratorSalt = 0x5c3a'71ed'9b0f'4c11ULL;

AgentState cleanRanker(const Params& params) {
    RankerState s;
    s.countdown = params.cMax();
    s.sub = initialRankingState(params);
    return AgentState{s};
}

AgentState cleanVerifier(int rank, const GroupPartition& partition, const Params& params,
                         int generation, int probationTimer) {
    VerifierState s;
    s.rank = rank;
    s.sub = initialVerifyState(rank, partition, params);
    s.sub.generation = generation;
    s.sub.probationTimer = probationTimer;
    return AgentState{s};
}

std::vector<int> shuffledIndices(int n, RandomStream& gen) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(gen.below(static_cast<std::uint64_t>(i + 1)));
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
    return idx;
}

/// Correct ranking: a seeded random permutation of [n] over the agents.
std::vector<int> randomRanking(int n, RandomStream& gen) {
    std::vector<int> ranks = shuffledIndices(n, gen);
    for (int& v : ranks) v += 1;
    return ranks;
}

Configuration correctRankedBase(const Scenario& s, const GroupPartition& partition,
                                RandomStream& gen) {
    Configuration config;
    const std::vector<int> ranks = randomRanking(s.params.n, gen);
    for (int i = 0; i < s.params.n; ++i) {
        config.agents.push_back(
            cleanVerifier(ranks[static_cast<std::size_t>(i)], partition, s.params, 0, 0));
    }
    return config;
}

Configuration buildDuplicateRanks(const Scenario& s, const GroupPartition& partition,
                                  RandomStream& gen) {
    const int n = s.params.n;
    const int k = s.duplicates;
    if (k < 2 || k > n)
        throw std::invalid_argument("duplicateRanks: need 2 <= k <= n, got k=" +
                                    std::to_string(k));

    const int shared = static_cast<int>(gen.uniform(n));
    std::vector<int> others;
    for (int v = 1; v <= n && static_cast<int>(others.size()) < n - k; ++v) {
        if (v != shared) others.push_back(v);
    }

    const std::vector<int> order = shuffledIndices(n, gen);
    std::vector<int> ranks(static_cast<std::size_t>(n), shared);
    for (int i = k; i < n; ++i) {
        ranks[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] =
            others[static_cast<std::size_t>(i - k)];
    }

    Configuration config;
    for (int i = 0; i < n; ++i) {
        config.agents.push_back(
            cleanVerifier(ranks[static_cast<std::size_t>(i)], partition, s.params, 0, 0));
    }
    return config;
}

Configuration buildCorruptedMessages(const Scenario& s, const GroupPartition& partition,
                                     RandomStream& gen) {
    Configuration config = correctRankedBase(s, partition, gen);
    const int k = s.corruptedCells;
    if (k < 1) throw std::invalid_argument("corruptedMessages: need k >= 1");

    // Corruptible cells: messages held for a rank other than the holder's
    // own, so the owner-copy restriction stays intact.
    struct Cell {
        int agent;
        std::size_t index;
        std::uint32_t sigSpace;
    };
    std::vector<Cell> cells;
    for (int a = 0; a < s.params.n; ++a) {
        const VerifierState& ver = config.agents[static_cast<std::size_t>(a)].verifier();
        const GroupContext ctx = groupContext(partition, s.params, ver.rank);
        for (int gi = 0; gi < ctx.size; ++gi) {
            if (ctx.lo + gi == ver.rank) continue;
            for (int j = 0; j < ctx.idsPerRank; ++j) {
                const std::size_t idx = static_cast<std::size_t>(gi) *
                                            static_cast<std::size_t>(ctx.idsPerRank) +
                                        static_cast<std::size_t>(j);
                if (ver.sub.dc.core.msgs[idx] != 0) cells.push_back({a, idx, ctx.sigSpace});
            }
        }
    }
    if (static_cast<int>(cells.size()) < k)
        throw std::invalid_argument("corruptedMessages: only " + std::to_string(cells.size()) +
                                    " corruptible cells at this (n, r)");

    for (int picked = 0; picked < k; ++picked) {
        const std::size_t j =
            static_cast<std::size_t>(picked) +
            static_cast<std::size_t>(gen.below(cells.size() - static_cast<std::size_t>(picked)));
        std::swap(cells[static_cast<std::size_t>(picked)], cells[j]);
        const Cell& cell = cells[static_cast<std::size_t>(picked)];
        std::uint32_t& content =
            config.agents[static_cast<std::size_t>(cell.agent)].verifier().sub.dc.core.msgs[cell.index];
        // A different value, uniform over the rest of the range.
        std::uint32_t d = static_cast<std::uint32_t>(gen.uniform(cell.sigSpace - 1));
        content = d >= content ? d + 1 : d;
    }
    return config;
}

Configuration buildMixedGenerations(const Scenario& s, const GroupPartition& partition,
                                    RandomStream& gen) {
    const int spread = s.generationSpread;
    if (spread < 1 || spread > 6)
        throw std::invalid_argument("mixedGenerations: spread must be in [1, 6]");
    Configuration config = correctRankedBase(s, partition, gen);
    for (int i = 0; i < s.params.n; ++i) {
        config.agents[static_cast<std::size_t>(i)].verifier().sub.generation = i % spread;
    }
    return config;
}

AgentState randomAgent(const Params& params, const GroupPartition& partition,
                       RandomStream& gen) {
    const int roleTag = static_cast<int>(gen.below(3));

    if (roleTag == 0) {
        ResetState s;
        s.resetCount = static_cast<int>(gen.below(static_cast<std::uint64_t>(params.rMax() + 1)));
        s.delayTimer = s.resetCount > 0
                           ? params.dMax()
                           : static_cast<int>(gen.below(static_cast<std::uint64_t>(params.dMax() + 1)));
        return AgentState{s};
    }

    if (roleTag == 1) {
        RankerState s;
        s.countdown = static_cast<int>(gen.below(static_cast<std::uint64_t>(params.cMax() + 1)));
        s.sub.rank = static_cast<int>(gen.uniform(params.n));
        s.sub.channel.assign(static_cast<std::size_t>(params.r), 0);

        auto randomLabel = [&]() -> std::optional<Label> {
            // Uniform over {none} and [r] x [labelPool].
            const std::uint64_t pool = static_cast<std::uint64_t>(params.r) *
                                       static_cast<std::uint64_t>(params.labelPool());
            const std::uint64_t pick = gen.below(pool + 1);
            if (pick == 0) return std::nullopt;
            const std::uint64_t flat = pick - 1;
            return Label{static_cast<int>(flat / params.labelPool()) + 1,
                         static_cast<int>(flat % params.labelPool()) + 1};
        };
        auto randomChannel = [&]() {
            for (int i = 0; i < params.r; ++i) {
                s.sub.channel[static_cast<std::size_t>(i)] =
                    static_cast<int>(gen.below(static_cast<std::uint64_t>(params.labelPool() + 1)));
            }
        };

        switch (gen.below(6)) {
            case 0: {
                BootState b;
                b.initialized = true;
                b.identifier = gen.uniform(params.idSpace());
                b.minIdentifier = gen.uniform(b.identifier);
                b.leCount =
                    static_cast<int>(gen.below(static_cast<std::uint64_t>(params.leCountCap() + 1)));
                b.leaderDone = b.leCount == 0 && gen.below(2) == 1;
                b.leaderBit = gen.below(2) == 1;
                s.sub.phase = b;
                break;  // election agents have not joined the channel broadcast
            }
            case 1: {
                const int a = static_cast<int>(gen.uniform(params.r));
                const int b = static_cast<int>(gen.uniform(params.r));
                s.sub.phase = Sheriff{std::min(a, b), std::max(a, b)};
                randomChannel();
                break;
            }
            case 2: {
                Deputy d;
                d.id = static_cast<int>(gen.uniform(params.r));
                d.counter = static_cast<int>(gen.uniform(params.labelPool()));
                s.sub.phase = d;
                randomChannel();
                // A deputy's own channel entry tracks its counter.
                s.sub.channel[static_cast<std::size_t>(d.id - 1)] = d.counter;
                break;
            }
            case 3:
                s.sub.phase = Recipient{randomLabel()};
                randomChannel();
                break;
            case 4: {
                Sleeper sl;
                sl.sleepTimer = static_cast<int>(gen.uniform(params.sleepMax()));
                sl.label = randomLabel();
                s.sub.phase = sl;
                randomChannel();
                break;
            }
            default:
                s.sub.phase = Ranked{};
                break;  // ranked agents are silent; channel stays inactive
        }
        return AgentState{s};
    }

    VerifierState s;
    s.rank = static_cast<int>(gen.uniform(params.n));
    s.sub.generation = static_cast<int>(gen.below(6));
    s.sub.probationTimer = static_cast<int>(gen.below(static_cast<std::uint64_t>(params.pMax() + 1)));

    if (gen.below(2) == 0) {
        s.sub.dc = DcState{true, DcCore{}};
        return AgentState{s};
    }

    const GroupContext ctx = groupContext(partition, params, s.rank);
    DcCore core;
    core.signature = static_cast<std::uint32_t>(gen.uniform(ctx.sigSpace));
    core.counter = static_cast<int>(gen.uniform(ctx.sigRefresh));
    core.observations.resize(static_cast<std::size_t>(ctx.idsPerRank));
    for (auto& obs : core.observations) obs = static_cast<std::uint32_t>(gen.uniform(ctx.sigSpace));
    core.msgs.assign(static_cast<std::size_t>(ctx.size) * static_cast<std::size_t>(ctx.idsPerRank),
                     0);
    for (int gi = 0; gi < ctx.size; ++gi) {
        const bool ownRow = ctx.lo + gi == s.rank;
        for (int j = 0; j < ctx.idsPerRank; ++j) {
            const std::size_t idx = static_cast<std::size_t>(gi) *
                                        static_cast<std::size_t>(ctx.idsPerRank) +
                                    static_cast<std::size_t>(j);
            if (ownRow) {
                // Held own-rank messages must match the observation table.
                if (gen.below(2) == 1) core.msgs[idx] = core.observations[static_cast<std::size_t>(j)];
            } else {
                core.msgs[idx] = static_cast<std::uint32_t>(gen.below(ctx.sigSpace + 1));
            }
        }
    }
    s.sub.dc = DcState{false, std::move(core)};
    return AgentState{s};
}

}  // namespace

const char* scenarioKindName(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::CleanTriggered: return "cleanTriggered";
        case ScenarioKind::FullyDormant: return "fullyDormant";
        case ScenarioKind::CorrectRankedVerifiers: return "correctRankedVerifiers";
        case ScenarioKind::DuplicateRanks: return "duplicateRanks";
        case ScenarioKind::CorruptedMessages: return "corruptedMessages";
        case ScenarioKind::MixedGenerations: return "mixedGenerations";
        case ScenarioKind::UniformRandomStates: return "uniformRandomStates";
        case ScenarioKind::Custom: return "custom";
    }
    return "?";
}

ScenarioKind scenarioKindFromName(const std::string& name) {
    for (ScenarioKind kind :
         {ScenarioKind::CleanTriggered, ScenarioKind::FullyDormant,
          ScenarioKind::CorrectRankedVerifiers, ScenarioKind::DuplicateRanks,
          ScenarioKind::CorruptedMessages, ScenarioKind::MixedGenerations,
          ScenarioKind::UniformRandomStates, ScenarioKind::Custom}) {
        if (name == scenarioKindName(kind)) return kind;
    }
    throw std::invalid_argument("unknown scenario kind: " + name);
}

Configuration buildScenario(const Scenario& scenario, std::uint64_t seed) {
    const Params& params = scenario.params;
    params.validate();
    const GroupPartition partition(params.n, params.r);
    RandomStream gen(splitmix64(seed ^ kGeneratorSalt));

    Configuration config;
    switch (scenario.kind) {
        case ScenarioKind::CleanTriggered: {
            for (int i = 0; i < params.n; ++i) config.agents.push_back(cleanRanker(params));
            triggerReset(config.agents.front(), params);
            break;
        }
        case ScenarioKind::FullyDormant: {
            ResetState dormant{0, params.dMax()};
            for (int i = 0; i < params.n; ++i) config.agents.push_back(AgentState{dormant});
            break;
        }
        case ScenarioKind::CorrectRankedVerifiers:
            config = correctRankedBase(scenario, partition, gen);
            break;
        case ScenarioKind::DuplicateRanks:
            config = buildDuplicateRanks(scenario, partition, gen);
            break;
        case ScenarioKind::CorruptedMessages:
            config = buildCorruptedMessages(scenario, partition, gen);
            break;
        case ScenarioKind::MixedGenerations:
            config = buildMixedGenerations(scenario, partition, gen);
            break;
        case ScenarioKind::UniformRandomStates: {
            for (int i = 0; i < params.n; ++i)
                config.agents.push_back(randomAgent(params, partition, gen));
            break;
        }
        case ScenarioKind::Custom: {
            std::ifstream in(scenario.customFile);
            if (!in)
                throw std::invalid_argument("custom scenario: cannot open " + scenario.customFile);
            std::stringstream buffer;
            buffer << in.rdbuf();
            config = configurationFromJson(buffer.str(), params);
            break;
        }
    }

    config.interactionCount = 0;
    if (params.rngMode == RngMode::SyntheticCoins) {
        config.coins = makeCoinStates(params, partition);
    }
    return config;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<std::string> validateConfiguration(const Configuration& config,
                                               const GroupPartition& partition,
                                               const Params& params) {
    std::vector<std::string> problems;
    auto report = [&problems](int agent, const std::string& what) {
        problems.push_back("agent " + std::to_string(agent) + ": " + what);
    };

    if (static_cast<int>(config.agents.size()) != params.n) {
        problems.push_back("population size " + std::to_string(config.agents.size()) +
                           " != n=" + std::to_string(params.n));
        return problems;
    }

    for (int i = 0; i < params.n; ++i) {
        const AgentState& a = config.agents[static_cast<std::size_t>(i)];
        switch (a.role()) {
            case Role::Resetting: {
                const ResetState& s = a.reset();
                if (s.resetCount < 0 || s.resetCount > params.rMax())
                    report(i, "resetCount out of range");
                if (s.delayTimer < 0 || s.delayTimer > params.dMax())
                    report(i, "delayTimer out of range");
                if (s.resetCount > 0 && s.delayTimer != params.dMax())
                    report(i, "positive resetCount requires a full delay window");
                break;
            }
            case Role::Ranking: {
                const RankerState& s = a.ranker();
                if (s.countdown < 0 || s.countdown > params.cMax())
                    report(i, "countdown out of range");
                if (static_cast<int>(s.sub.channel.size()) != params.r)
                    report(i, "channel size != r");
                for (int c : s.sub.channel) {
                    if (c < 0 || c > params.labelPool()) report(i, "channel entry out of range");
                }
                if (s.sub.rank < 1 || s.sub.rank > params.n) report(i, "ranking rank out of range");
                if (const auto* b = std::get_if<BootState>(&s.sub.phase)) {
                    if (b->initialized) {
                        if (b->identifier < 1 || b->identifier > params.idSpace())
                            report(i, "identifier out of range");
                        if (b->minIdentifier > b->identifier)
                            report(i, "minIdentifier exceeds identifier");
                        if (b->leaderDone && b->leCount != 0)
                            report(i, "leaderDone before the election timer ran out");
                    }
                } else if (const auto* sh = std::get_if<Sheriff>(&s.sub.phase)) {
                    if (sh->lowBadge < 1 || sh->highBadge > params.r ||
                        sh->lowBadge > sh->highBadge)
                        report(i, "badge interval invalid");
                } else if (const auto* d = std::get_if<Deputy>(&s.sub.phase)) {
                    if (d->id < 1 || d->id > params.r) report(i, "deputy id out of range");
                    if (d->counter < 1 || d->counter > params.labelPool())
                        report(i, "deputy counter out of range");
                    if (s.sub.channel[static_cast<std::size_t>(d->id - 1)] < 1)
                        report(i, "deputy channel entry must be at least 1");
                } else if (const auto* sl = std::get_if<Sleeper>(&s.sub.phase)) {
                    if (sl->sleepTimer < 1 || sl->sleepTimer > params.sleepMax())
                        report(i, "sleep timer out of range");
                }
                break;
            }
            case Role::Verifying: {
                const VerifierState& s = a.verifier();
                if (s.rank < 1 || s.rank > params.n) report(i, "rank out of range");
                if (s.sub.generation < 0 || s.sub.generation > 5)
                    report(i, "generation out of range");
                if (s.sub.probationTimer < 0 || s.sub.probationTimer > params.pMax())
                    report(i, "probation timer out of range");
                if (s.sub.dc.top) break;
                const GroupContext ctx = groupContext(partition, params, s.rank);
                const DcCore& core = s.sub.dc.core;
                if (core.signature < 1 || core.signature > ctx.sigSpace)
                    report(i, "signature out of range");
                if (core.counter < 1 || core.counter > ctx.sigRefresh)
                    report(i, "refresh counter out of range");
                if (static_cast<int>(core.observations.size()) != ctx.idsPerRank)
                    report(i, "observation table size mismatch");
                if (core.msgs.size() !=
                    static_cast<std::size_t>(ctx.size) * static_cast<std::size_t>(ctx.idsPerRank)) {
                    report(i, "message table size mismatch");
                    break;
                }
                for (const auto& obs : core.observations) {
                    if (obs < 1 || obs > ctx.sigSpace) report(i, "observation out of range");
                }
                for (int gi = 0; gi < ctx.size; ++gi) {
                    const bool ownRow = ctx.lo + gi == s.rank;
                    for (int j = 0; j < ctx.idsPerRank; ++j) {
                        const std::uint32_t c =
                            core.msgs[static_cast<std::size_t>(gi) *
                                          static_cast<std::size_t>(ctx.idsPerRank) +
                                      static_cast<std::size_t>(j)];
                        if (c > ctx.sigSpace) report(i, "message content out of range");
                        if (ownRow && c != 0 && c != core.observations[static_cast<std::size_t>(j)])
                            report(i, "own-rank message content differs from observation");
                    }
                }
                break;
            }
        }
    }

    if (params.rngMode == RngMode::SyntheticCoins &&
        static_cast<int>(config.coins.size()) != params.n) {
        problems.push_back("coin states missing in synthetic-coin mode");
    }
    return problems;
}

// ---------------------------------------------------------------------------
// JSON round trip for custom scenarios

namespace {

using nlohmann::json;

json phaseToJson(const RankPhase& phase) {
    json j;
    if (const auto* b = std::get_if<BootState>(&phase)) {
        j["type"] = "election";
        j["initialized"] = b->initialized;
        j["identifier"] = b->identifier;
        j["minIdentifier"] = b->minIdentifier;
        j["leCount"] = b->leCount;
        j["leaderDone"] = b->leaderDone;
        j["leaderBit"] = b->leaderBit;
    } else if (const auto* sh = std::get_if<Sheriff>(&phase)) {
        j["type"] = "sheriff";
        j["lowBadge"] = sh->lowBadge;
        j["highBadge"] = sh->highBadge;
    } else if (const auto* d = std::get_if<Deputy>(&phase)) {
        j["type"] = "deputy";
        j["id"] = d->id;
        j["counter"] = d->counter;
    } else if (const auto* rec = std::get_if<Recipient>(&phase)) {
        j["type"] = "recipient";
        if (rec->label) j["label"] = {rec->label->deputyId, rec->label->index};
    } else if (const auto* sl = std::get_if<Sleeper>(&phase)) {
        j["type"] = "sleeper";
        j["sleepTimer"] = sl->sleepTimer;
        if (sl->label) j["label"] = {sl->label->deputyId, sl->label->index};
    } else {
        j["type"] = "ranked";
    }
    return j;
}

RankPhase phaseFromJson(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "election") {
        BootState b;
        b.initialized = j.value("initialized", false);
        b.identifier = j.value("identifier", std::int64_t{0});
        b.minIdentifier = j.value("minIdentifier", b.identifier);
        b.leCount = j.value("leCount", 0);
        b.leaderDone = j.value("leaderDone", false);
        b.leaderBit = j.value("leaderBit", false);
        return b;
    }
    if (type == "sheriff") return Sheriff{j.at("lowBadge").get<int>(), j.at("highBadge").get<int>()};
    if (type == "deputy") return Deputy{j.at("id").get<int>(), j.at("counter").get<int>()};
    auto label = [&j]() -> std::optional<Label> {
        if (!j.contains("label")) return std::nullopt;
        return Label{j["label"][0].get<int>(), j["label"][1].get<int>()};
    };
    if (type == "recipient") return Recipient{label()};
    if (type == "sleeper") return Sleeper{j.value("sleepTimer", 1), label()};
    if (type == "ranked") return Ranked{};
    throw std::invalid_argument("unknown ranking phase: " + type);
}

}  // namespace

std::string configurationToJson(const Configuration& config) {
    json agents = json::array();
    for (const AgentState& a : config.agents) {
        json j;
        switch (a.role()) {
            case Role::Resetting:
                j["role"] = "resetting";
                j["resetCount"] = a.reset().resetCount;
                j["delayTimer"] = a.reset().delayTimer;
                break;
            case Role::Ranking:
                j["role"] = "ranking";
                j["countdown"] = a.ranker().countdown;
                j["rank"] = a.ranker().sub.rank;
                j["channel"] = a.ranker().sub.channel;
                j["phase"] = phaseToJson(a.ranker().sub.phase);
                break;
            case Role::Verifying: {
                const VerifierState& v = a.verifier();
                j["role"] = "verifying";
                j["rank"] = v.rank;
                j["generation"] = v.sub.generation;
                j["probationTimer"] = v.sub.probationTimer;
                if (v.sub.dc.top) {
                    j["dc"] = "top";
                } else {
                    j["dc"] = {{"signature", v.sub.dc.core.signature},
                               {"counter", v.sub.dc.core.counter},
                               {"msgs", v.sub.dc.core.msgs},
                               {"observations", v.sub.dc.core.observations}};
                }
                break;
            }
        }
        agents.push_back(std::move(j));
    }
    return json{{"agents", agents}}.dump(2);
}

Configuration configurationFromJson(const std::string& text, const Params& params) {
    const json root = json::parse(text);
    Configuration config;
    for (const json& j : root.at("agents")) {
        const std::string role = j.at("role").get<std::string>();
        if (role == "resetting") {
            config.agents.push_back(
                AgentState{ResetState{j.at("resetCount").get<int>(), j.at("delayTimer").get<int>()}});
        } else if (role == "ranking") {
            RankerState s;
            s.countdown = j.at("countdown").get<int>();
            s.sub.rank = j.value("rank", 1);
            s.sub.channel = j.value("channel", std::vector<int>(static_cast<std::size_t>(params.r), 0));
            s.sub.channel.resize(static_cast<std::size_t>(params.r), 0);
            s.sub.phase = phaseFromJson(j.at("phase"));
            config.agents.push_back(AgentState{s});
        } else if (role == "verifying") {
            VerifierState s;
            s.rank = j.at("rank").get<int>();
            s.sub.generation = j.at("generation").get<int>();
            s.sub.probationTimer = j.at("probationTimer").get<int>();
            if (j.at("dc").is_string()) {
                s.sub.dc = DcState{true, DcCore{}};
            } else {
                DcCore core;
                core.signature = j["dc"].at("signature").get<std::uint32_t>();
                core.counter = j["dc"].at("counter").get<int>();
                core.msgs = j["dc"].at("msgs").get<std::vector<std::uint32_t>>();
                core.observations = j["dc"].at("observations").get<std::vector<std::uint32_t>>();
                s.sub.dc = DcState{false, std::move(core)};
            }
            config.agents.push_back(AgentState{s});
        } else {
            throw std::invalid_argument("unknown role: " + role);
        }
    }
    return config;
}

}  // namespace ssle
