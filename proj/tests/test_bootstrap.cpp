#include <doctest.h>

#include "helpers.hpp"
#include "ssle/bootstrap.hpp"

using namespace ssle;
using test::makeParams;

TEST_CASE("bootInit seeds both identifiers and arms the timer") {
    const Params params = makeParams(8, 2);
    const BootState s = bootInit(42, params);
    CHECK(s.initialized);
    CHECK(s.identifier == 42);
    CHECK(s.minIdentifier == 42);
    CHECK(s.leCount == params.leCountCap());
    CHECK_FALSE(s.leaderDone);
    CHECK_FALSE(s.leaderBit);
    CHECK(params.idSpace() == 512);
}

TEST_CASE("bootStep propagates the pairwise minimum") {
    const Params params = makeParams(8, 2);
    BootState u = bootInit(9, params);
    BootState v = bootInit(3, params);
    u.minIdentifier = 5;
    bootStep(u, v);
    CHECK(u.minIdentifier == 3);
    CHECK(v.minIdentifier == 3);
}

TEST_CASE("an agent whose timer runs out decides on the minimum") {
    const Params params = makeParams(8, 2);

    BootState winner = bootInit(3, params);
    winner.leCount = 1;
    BootState peer = bootInit(7, params);
    bootStep(winner, peer);
    CHECK(winner.leaderDone);
    CHECK(winner.leaderBit);

    BootState loser = bootInit(9, params);
    loser.minIdentifier = 3;
    loser.leCount = 1;
    BootState other = bootInit(5, params);
    other.minIdentifier = 3;
    bootStep(loser, other);
    CHECK(loser.leaderDone);
    CHECK_FALSE(loser.leaderBit);
}

TEST_CASE("minIdentifier is non-increasing across interactions") {
    const Params params = makeParams(16, 4);
    RandomStream stream(12);
    std::vector<BootState> agents;
    for (int i = 0; i < 16; ++i) agents.push_back(bootInit(stream.uniform(params.idSpace()), params));

    std::vector<std::int64_t> previous;
    for (const auto& a : agents) previous.push_back(a.minIdentifier);
    for (int t = 0; t < 5000; ++t) {
        const auto [i, j] = samplePair(stream, 16);
        bootStep(agents[static_cast<std::size_t>(i)], agents[static_cast<std::size_t>(j)]);
        for (std::size_t k = 0; k < agents.size(); ++k) {
            CHECK(agents[k].minIdentifier <= previous[k]);
            previous[k] = agents[k].minIdentifier;
        }
    }
}

TEST_CASE("the election produces exactly one winner in at least 99 of 100 trials") {
    for (int n : {8, 16, 32}) {
        const Params params = makeParams(n, 2);
        int unique = 0;
        for (int trial = 0; trial < 100; ++trial) {
            RandomStream stream(trialSeed(500 + static_cast<std::uint64_t>(n),
                                          static_cast<std::uint64_t>(trial)));
            std::vector<BootState> agents(static_cast<std::size_t>(n));

            // All agents are awake; identifiers are sampled lazily on the
            // first interaction, as in the protocol.
            bool allDone = false;
            for (int t = 0; t < 100 * n * n && !allDone; ++t) {
                const auto [i, j] = samplePair(stream, n);
                BootState& u = agents[static_cast<std::size_t>(i)];
                BootState& v = agents[static_cast<std::size_t>(j)];
                if (!u.initialized) u = bootInit(stream.uniform(params.idSpace()), params);
                if (!v.initialized) v = bootInit(stream.uniform(params.idSpace()), params);
                bootStep(u, v);
                allDone = true;
                for (const auto& a : agents) {
                    if (!a.initialized || !a.leaderDone) allDone = false;
                }
            }

            int winners = 0;
            for (const auto& a : agents) winners += a.leaderBit ? 1 : 0;
            if (allDone && winners == 1) ++unique;
        }
        CHECK(unique >= 99);
    }
}
