#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ssle/verify.hpp"

using namespace ssle;
using test::makeParams;
using test::makeVerifier;
using test::scriptedDraw;

TEST_CASE("an off-probation error soft-resets: next generation, fresh state, full timer") {
    const Params params = makeParams(8, 2);
    const GroupPartition partition(8, 2);
    AgentState u = makeVerifier(params, partition, 3, 2, 0);
    u.verifier().sub.dc = DcState{true, DcCore{}};  // standing error state
    AgentState v = makeVerifier(params, partition, 5, 2, 0);
    const DcState vDc = v.verifier().sub.dc;

    const VerifyEvents ev = stableVerifyStep(u, v, partition, params, scriptedDraw({}));
    CHECK(ev.softResets == 1);
    CHECK(ev.fullResets == 0);
    CHECK(u.verifier().sub.generation == 3);
    CHECK(u.verifier().sub.probationTimer == params.pMax());
    CHECK(u.verifier().sub.dc == initDC(3, partition, params));
    // The partner in the same generation is untouched beyond its timer.
    CHECK(v.verifier().sub.generation == 2);
    CHECK(v.verifier().sub.dc == vDc);
}

TEST_CASE("an error during probation escalates to a full reset") {
    const Params params = makeParams(8, 2);
    const GroupPartition partition(8, 2);
    AgentState u = makeVerifier(params, partition, 3, 2, 17);
    u.verifier().sub.dc = DcState{true, DcCore{}};
    AgentState v = makeVerifier(params, partition, 5, 2, 0);

    const VerifyEvents ev = stableVerifyStep(u, v, partition, params, scriptedDraw({}));
    CHECK(ev.fullResets == 1);
    REQUIRE(u.role() == Role::Resetting);
    CHECK(u.reset().resetCount == params.rMax());
    CHECK(v.role() == Role::Verifying);
}

TEST_CASE("equal ranks in one generation error out both agents") {
    const Params params = makeParams(8, 2);
    const GroupPartition partition(8, 2);
    AgentState u = makeVerifier(params, partition, 3, 1, 0);
    AgentState v = makeVerifier(params, partition, 3, 1, 0);
    const VerifyEvents ev = stableVerifyStep(u, v, partition, params, scriptedDraw({}));
    CHECK(ev.topsRaised == 1);
    CHECK(ev.softResets == 2);  // both were off probation
    CHECK(u.verifier().sub.generation == 2);
    CHECK(v.verifier().sub.generation == 2);
}

TEST_CASE("a trailing generation is adopted when off probation") {
    const Params params = makeParams(8, 2);
    const GroupPartition partition(8, 2);
    AgentState u = makeVerifier(params, partition, 3, 2, 0);
    AgentState v = makeVerifier(params, partition, 5, 3, 40);

    const VerifyEvents ev = stableVerifyStep(u, v, partition, params, scriptedDraw({}));
    CHECK(ev.softResets == 1);
    CHECK(u.verifier().sub.generation == 3);
    CHECK(u.verifier().sub.probationTimer == params.pMax());
    CHECK(u.verifier().sub.dc == initDC(3, partition, params));
    CHECK(v.verifier().sub.generation == 3);
    CHECK(v.verifier().sub.probationTimer == 39);  // only the decrement
}

TEST_CASE("the wraparound 5 -> 0 counts as trailing by one") {
    const Params params = makeParams(8, 2);
    const GroupPartition partition(8, 2);
    AgentState u = makeVerifier(params, partition, 3, 5, 0);
    AgentState v = makeVerifier(params, partition, 5, 0, 0);
    stableVerifyStep(u, v, partition, params, scriptedDraw({}));
    CHECK(u.verifier().sub.generation == 0);
    CHECK(v.role() == Role::Verifying);
}

TEST_CASE("any other generation gap hard-resets the initiator") {
    const Params params = makeParams(8, 2);
    const GroupPartition partition(8, 2);
    AgentState u = makeVerifier(params, partition, 3, 2, 0);
    AgentState v = makeVerifier(params, partition, 5, 5, 0);
    const VerifyEvents ev = stableVerifyStep(u, v, partition, params, scriptedDraw({}));
    CHECK(ev.fullResets == 1);
    CHECK(u.role() == Role::Resetting);
    CHECK(v.role() == Role::Verifying);
}

TEST_CASE("probation decrements even across mismatched generations") {
    const Params params = makeParams(8, 2);
    const GroupPartition partition(8, 2);
    AgentState u = makeVerifier(params, partition, 3, 1, 10);
    AgentState v = makeVerifier(params, partition, 5, 4, 7);
    stableVerifyStep(u, v, partition, params, scriptedDraw({}));
    CHECK(v.verifier().sub.probationTimer == 6);
}

TEST_CASE("timers move only by decrements or full-window jumps; generations only advance") {
    const Params params = makeParams(10, 4);
    const GroupPartition partition(10, 4);
    RandomStream gen(61);
    RandomStream draws(62);
    const DrawFn draw = [&draws](std::int64_t n, int) { return draws.uniform(n); };

    for (int trial = 0; trial < 500; ++trial) {
        const int rankU = static_cast<int>(gen.uniform(10));
        int rankV = static_cast<int>(gen.uniform(10));
        AgentState u = makeVerifier(params, partition, rankU, static_cast<int>(gen.below(6)),
                                    static_cast<int>(gen.below(50)));
        AgentState v = makeVerifier(params, partition, rankV, static_cast<int>(gen.below(6)),
                                    static_cast<int>(gen.below(50)));
        const int genU = u.verifier().sub.generation;
        const int genV = v.verifier().sub.generation;
        const int timerU = u.verifier().sub.probationTimer;
        const int timerV = v.verifier().sub.probationTimer;

        stableVerifyStep(u, v, partition, params, draw);

        struct Probe {
            const AgentState* agent;
            int gen;
            int timer;
        };
        for (const Probe& p : {Probe{&u, genU, timerU}, Probe{&v, genV, timerV}}) {
            if (p.agent->role() != Role::Verifying) continue;  // full reset
            const VerifyState& s = p.agent->verifier().sub;
            const int expectDec = p.timer > 0 ? p.timer - 1 : 0;
            CHECK((s.probationTimer == expectDec || s.probationTimer == params.pMax()));
            CHECK((s.generation == p.gen || s.generation == (p.gen + 1) % 6 ||
                   s.probationTimer == params.pMax()));
            if (s.generation != p.gen) {
                // Movers must have hit timer zero first.
                CHECK(expectDec == 0);
            }
        }
    }
}

TEST_CASE("a fresh generation spreads through an off-probation population") {
    // All agents in generation g with zero timers, one seeded ahead with a
    // fresh state; everyone joins g+1 (or a reset fires) within 10 n ln n.
    for (int n : {8, 16, 32}) {
        const Params params = makeParams(n, 2);
        const GroupPartition partition(n, 2);
        const auto bound =
            static_cast<std::uint64_t>(std::ceil(10.0 * n * std::log(static_cast<double>(n))));

        int good = 0;
        for (int trial = 0; trial < 100; ++trial) {
            Scenario s;
            s.kind = ScenarioKind::CorrectRankedVerifiers;
            s.params = params;
            Configuration config =
                buildScenario(s, trialSeed(800 + static_cast<std::uint64_t>(n),
                                           static_cast<std::uint64_t>(trial)));
            AgentState& seeded = config.agents.front();
            seeded.verifier().sub.generation = 1;
            seeded.verifier().sub.probationTimer = params.pMax();
            seeded.verifier().sub.dc = initDC(seeded.verifier().rank, partition, params);

            Engine engine(params, trialSeed(801, static_cast<std::uint64_t>(trial)));
            std::uint64_t resets = 0;
            bool converged = false;
            StepEvents events;
            for (std::uint64_t t = 0; t < bound && !converged && resets == 0; ++t) {
                engine.stepInPlace(config, events);
                resets += static_cast<std::uint64_t>(events.fullResets);
                converged = true;
                for (const auto& a : config.agents) {
                    if (a.role() != Role::Verifying || a.verifier().sub.generation != 1)
                        converged = false;
                }
            }
            if (converged || resets > 0) ++good;
        }
        CHECK(good >= 95);
    }
}
