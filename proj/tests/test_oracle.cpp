#include <doctest.h>

#include "helpers.hpp"
#include "ssle/oracle.hpp"

using namespace ssle;
using test::makeParams;
using test::makeVerifier;

TEST_CASE("classify walks the recovery hierarchy") {
    const Params params = makeParams(8, 2);
    const GroupPartition partition(8, 2);

    Configuration config;
    for (int rank = 1; rank <= 8; ++rank)
        config.agents.push_back(makeVerifier(params, partition, rank, 4, 0));
    CHECK(classify(config) == HierarchyLevel::C5);

    Configuration nonPerm = config;
    nonPerm.agents[2].verifier().rank = 1;
    CHECK(classify(nonPerm) == HierarchyLevel::C4);

    Configuration onProbation = config;
    onProbation.agents[5].verifier().sub.probationTimer = 3;
    CHECK(classify(onProbation) == HierarchyLevel::C3);

    Configuration mixedGens = config;
    mixedGens.agents[0].verifier().sub.generation = 2;
    mixedGens.agents[1].verifier().sub.generation = 2;
    mixedGens.agents[2].verifier().sub.generation = 3;
    for (std::size_t i = 3; i < 8; ++i) mixedGens.agents[i].verifier().sub.generation = 2;
    CHECK(classify(mixedGens) == HierarchyLevel::C2);

    Configuration withRanker = config;
    withRanker.agents[7] = test::makeRanker(params, Ranked{});
    CHECK(classify(withRanker) == HierarchyLevel::C1);

    Configuration withResetter = config;
    withResetter.agents[0] = AgentState{ResetState{0, 3}};
    CHECK(classify(withResetter) == HierarchyLevel::C0);
}

TEST_CASE("exhaustive exploration: clean groups never reach the error state") {
    SoundnessOptions opts;  // group 2, ids 2, signatures 2, refresh 2
    const SoundnessResult res = exploreSoundness(opts);
    CHECK_FALSE(res.topReachable);
    CHECK(res.frontierExhausted);
    CHECK(res.statesVisited > 1);
}

TEST_CASE("exhaustive exploration: a planted duplicate rank reaches the error state") {
    SoundnessOptions opts;
    opts.duplicateRank = true;
    const SoundnessResult res = exploreSoundness(opts);
    CHECK(res.topReachable);
}

TEST_CASE("a single-agent group has no transitions at all") {
    SoundnessOptions opts;
    opts.groupSize = 1;
    const SoundnessResult res = exploreSoundness(opts);
    CHECK_FALSE(res.topReachable);
    CHECK(res.statesVisited == 1);
    CHECK(res.transitions == 0);
    CHECK(res.frontierExhausted);
}

TEST_CASE("a slightly larger instance still exhausts") {
    SoundnessOptions opts;
    opts.groupSize = 2;
    opts.idsPerRank = 2;
    opts.sigSpace = 3;
    opts.sigRefresh = 3;
    const SoundnessResult res = exploreSoundness(opts);
    CHECK_FALSE(res.topReachable);
    CHECK(res.frontierExhausted);
}

namespace {

/// First step at which every agent is a verifier, observed via the engine.
class AllVerifierWatch : public StepObserver {
public:
    void onStep(const Configuration& config, const StepEvents&) override {
        step_ += 1;
        if (first_) return;
        for (const auto& a : config.agents) {
            if (a.role() != Role::Verifying) return;
        }
        first_ = step_;
    }
    std::optional<std::uint64_t> first() const { return first_; }

private:
    std::uint64_t step_ = 0;
    std::optional<std::uint64_t> first_;
};

}  // namespace

TEST_CASE("the safe surrogate holds from the step all agents verify on a clean run") {
    Scenario s;
    s.kind = ScenarioKind::CleanTriggered;
    s.params = makeParams(8, 2);
    Configuration config = buildScenario(s, 33);
    Engine engine(s.params, 34);

    SurrogateTracker tracker(config, engine.partition, engine.params);
    AllVerifierWatch watch;
    run(engine, config, nullptr, 20000, {}, {&tracker, &watch});

    REQUIRE(watch.first().has_value());
    REQUIRE(tracker.firstHold().has_value());
    CHECK(*tracker.firstHold() == *watch.first());
    CHECK(tracker.closureClean());
}

TEST_CASE("the surrogate never holds while a duplicate rank persists") {
    Scenario s;
    s.kind = ScenarioKind::DuplicateRanks;
    s.params = makeParams(8, 2);
    s.duplicates = 2;
    Configuration config = buildScenario(s, 35);
    Engine engine(s.params, 36);
    SurrogateTracker tracker(config, engine.partition, engine.params);
    StepEvents events;
    for (int t = 0; t < 10; ++t) {
        engine.stepInPlace(config, events);
        tracker.onStep(config, events);
    }
    CHECK_FALSE(tracker.firstHold().has_value());
}

TEST_CASE("the surrogate never holds mid-ranking") {
    Scenario s;
    s.kind = ScenarioKind::CleanTriggered;
    s.params = makeParams(8, 2);
    Configuration config = buildScenario(s, 37);
    Engine engine(s.params, 38);
    SurrogateTracker tracker(config, engine.partition, engine.params);
    StepEvents events;
    for (int t = 0; t < 10; ++t) {
        engine.stepInPlace(config, events);
        tracker.onStep(config, events);
    }
    CHECK_FALSE(tracker.firstHold().has_value());
}

TEST_CASE("ranks of a correct verifier population form a permutation") {
    const Params params = makeParams(8, 2);
    const GroupPartition partition(8, 2);
    Configuration config;
    for (int rank = 1; rank <= 8; ++rank)
        config.agents.push_back(makeVerifier(params, partition, rank));
    CHECK(ranksFormPermutation(config, 8));
    config.agents[0].verifier().rank = 2;
    CHECK_FALSE(ranksFormPermutation(config, 8));
}
