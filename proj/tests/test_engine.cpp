#include <doctest.h>

#include <array>
#include <map>

#include "helpers.hpp"

using namespace ssle;
using test::makeParams;

TEST_CASE("samplePair rejects degenerate populations") {
    RandomStream stream(1);
    CHECK_THROWS_AS(samplePair(stream, 1), std::invalid_argument);
}

TEST_CASE("two agents alternate both ordered pairs evenly") {
    RandomStream stream(17);
    int forward = 0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
        const auto [a, b] = samplePair(stream, 2);
        CHECK(a != b);
        if (a == 0) ++forward;
    }
    CHECK(forward > draws / 2 - 500);
    CHECK(forward < draws / 2 + 500);
}

TEST_CASE("n=4 produces all 12 ordered pairs near 1/12") {
    RandomStream stream(18);
    std::map<std::pair<int, int>, int> counts;
    const int draws = 120000;
    for (int i = 0; i < draws; ++i) counts[samplePair(stream, 4)] += 1;
    REQUIRE(counts.size() == 12);
    for (const auto& [pair, count] : counts) {
        const double freq = static_cast<double>(count) / draws;
        CHECK(freq > 1.0 / 12.0 - 0.005);
        CHECK(freq < 1.0 / 12.0 + 0.005);
    }
}

TEST_CASE("n=8 pair frequencies pass chi-square at significance 0.001") {
    // 56 ordered pairs, df = 55; the 0.999 quantile of chi-square(55) is
    // 93.17 (frozen from tables).
    RandomStream stream(19);
    const int draws = 1000000;
    std::array<int, 64> counts{};
    for (int i = 0; i < draws; ++i) {
        const auto [a, b] = samplePair(stream, 8);
        counts[static_cast<std::size_t>(a * 8 + b)] += 1;
    }
    const double expected = static_cast<double>(draws) / 56.0;
    double chi2 = 0.0;
    int cells = 0;
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            if (a == b) {
                CHECK(counts[static_cast<std::size_t>(a * 8 + b)] == 0);
                continue;
            }
            const double d = counts[static_cast<std::size_t>(a * 8 + b)] - expected;
            chi2 += d * d / expected;
            ++cells;
        }
    }
    REQUIRE(cells == 56);
    CHECK(chi2 < 93.17);
}

TEST_CASE("every agent participates in about 2/n of interactions") {
    RandomStream stream(20);
    const int n = 8;
    const int draws = 100000;
    std::array<int, 8> participation{};
    for (int i = 0; i < draws; ++i) {
        const auto [a, b] = samplePair(stream, n);
        participation[static_cast<std::size_t>(a)] += 1;
        participation[static_cast<std::size_t>(b)] += 1;
    }
    for (int i = 0; i < n; ++i) {
        const double f = static_cast<double>(participation[static_cast<std::size_t>(i)]) / draws;
        CHECK(f > 2.0 / n - 0.01);
        CHECK(f < 2.0 / n + 0.01);
    }
}

TEST_CASE("a step changes at most the two sampled agents") {
    Scenario s;
    s.kind = ScenarioKind::UniformRandomStates;
    s.params = makeParams(10, 3);
    Engine engine(s.params, 55);
    Configuration config = buildScenario(s, 54);

    for (int t = 0; t < 300; ++t) {
        const Configuration next = engine.step(config);
        CHECK(next.agents.size() == config.agents.size());
        CHECK(test::countDiffering(config, next) <= 2);
        CHECK(next.interactionCount == config.interactionCount + 1);
        config = next;
    }
}

TEST_CASE("identical parameters, configuration and seed reproduce the run exactly") {
    Scenario s;
    s.kind = ScenarioKind::UniformRandomStates;
    s.params = makeParams(12, 4);
    const Configuration initial = buildScenario(s, 77);

    auto go = [&]() {
        Engine engine(s.params, 78);
        Configuration config = initial;
        RunResult result = run(engine, config, nullptr, 20000, {});
        return std::pair{config, result};
    };
    const auto [configA, resultA] = go();
    const auto [configB, resultB] = go();
    CHECK(configA == configB);
    CHECK(resultA.totalInteractions == resultB.totalInteractions);
    CHECK(resultA.fullResets == resultB.fullResets);
    CHECK(resultA.softResets == resultB.softResets);
}

TEST_CASE("run honors stop predicates, horizons and monitors") {
    Scenario s;
    s.kind = ScenarioKind::CleanTriggered;
    s.params = makeParams(8, 2);

    SUBCASE("an initially true stop performs no interactions") {
        Configuration config = buildScenario(s, 5);
        Engine engine(s.params, 6);
        const RunResult r = run(engine, config, [](const Configuration&) { return true; }, 100, {});
        CHECK(r.totalInteractions == 0);
    }

    SUBCASE("an unreachable stop exhausts the horizon") {
        Configuration config = buildScenario(s, 5);
        Engine engine(s.params, 6);
        const RunResult r =
            run(engine, config, [](const Configuration&) { return false; }, 1000, {});
        CHECK(r.totalInteractions == 1000);
    }

    SUBCASE("the first violation step of each monitor is recorded") {
        Configuration config = buildScenario(s, 5);
        Engine engine(s.params, 6);
        std::vector<Monitor> monitors;
        monitors.push_back(
            Monitor{"leaderUnique", [](const Configuration& c) { return c.interactionCount < 57; }});
        const RunResult r = run(engine, config, nullptr, 200, monitors);
        REQUIRE(r.monitorViolations.size() == 1);
        CHECK(r.monitorViolations[0].first == 57);
        CHECK(r.monitorViolations[0].second == "leaderUnique");
    }
}
