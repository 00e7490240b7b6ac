#include "ssle/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ssle {

std::optional<std::uint64_t> measureStabilization(const LeaderTrace& trace,
                                                  std::uint64_t confirmWindow) {
    if (trace.leaderAt.empty()) return std::nullopt;
    const std::uint64_t lastIndex = trace.leaderAt.size() - 1;
    if (lastIndex < confirmWindow) return std::nullopt;
    if (trace.leaderAt[static_cast<std::size_t>(lastIndex)] < 0) return std::nullopt;

    // Walk the stable suffix backwards: the leader must match the final one
    // throughout, and no full reset may fire inside the suffix. A reset
    // during interaction t produced state t, so it pins the start at t.
    const std::int32_t leader = trace.leaderAt[static_cast<std::size_t>(lastIndex)];
    std::uint64_t start = lastIndex;
    auto resetAt = [&trace](std::uint64_t step) {
        return std::binary_search(trace.fullResetAt.begin(), trace.fullResetAt.end(), step);
    };
    while (start > 0 && trace.leaderAt[static_cast<std::size_t>(start - 1)] == leader &&
           !resetAt(start)) {
        start -= 1;
    }

    if (start + confirmWindow <= lastIndex) return start;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// RunRecorder

RunRecorder::RunRecorder(const Configuration& initial, std::uint64_t stopAfterStableFor,
                         bool stopAtFirstTop, bool keepEvents)
    : stopAfterStableFor_(stopAfterStableFor),
      stopAtFirstTop_(stopAtFirstTop),
      keepEvents_(keepEvents) {
    const auto leader = leaderOf(initial.agents);
    trace_.leaderAt.push_back(leader ? static_cast<std::int32_t>(*leader) : -1);
    stableFor_ = 0;
}

void RunRecorder::onStep(const Configuration& config, const StepEvents& events) {
    step_ += 1;
    const auto leader = leaderOf(config.agents);
    const std::int32_t encoded = leader ? static_cast<std::int32_t>(*leader) : -1;
    const std::int32_t previous = trace_.leaderAt.back();
    trace_.leaderAt.push_back(encoded);

    if (events.fullResets > 0) trace_.fullResetAt.push_back(step_);
    if (events.topsRaised > 0) trace_.topAt.push_back(step_);

    if (encoded >= 0 && encoded == previous && events.fullResets == 0) {
        stableFor_ += 1;
    } else {
        stableFor_ = 0;
    }

    if (keepEvents_) {
        auto push = [this, &events](const char* kind) {
            events_.push_back(TraceEvent{step_, kind, events.initiator, events.responder});
        };
        if (events.fullResets > 0) push("full_reset");
        if (events.softResets > 0) push("soft_reset");
        if (events.topsRaised > 0) push("top");
        if (events.verifierEntries > 0) push("verifier_entry");
        if (events.awakenings > 0) push("awaken");
    }
}

bool RunRecorder::wantStop() const {
    if (stopAtFirstTop_ && !trace_.topAt.empty()) return true;
    return stopAfterStableFor_ > 0 && stableFor_ >= stopAfterStableFor_;
}

// ---------------------------------------------------------------------------
// Trials

std::uint64_t defaultConfirmWindow(const Params& params) {
    const double unit = static_cast<double>(params.n) * params.n / params.r * params.logN();
    return static_cast<std::uint64_t>(std::ceil(20.0 * unit));
}

TrialResult runTrial(const Scenario& scenario, std::uint64_t trialIndex,
                     const ExperimentOptions& options) {
    TrialResult result;
    result.trialIndex = trialIndex;
    result.trialSeed = trialSeed(scenario.seed, trialIndex);

    Configuration config = buildScenario(scenario, result.trialSeed);
    Engine engine(scenario.params, splitmix64(result.trialSeed));

    {
        const auto problems = validateConfiguration(config, engine.partition, engine.params);
        if (!problems.empty())
            throw std::logic_error("scenario generator produced an invalid configuration: " +
                                   problems.front());
    }

    const std::uint64_t confirmWindow =
        options.confirmWindow > 0 ? options.confirmWindow : defaultConfirmWindow(scenario.params);

    RunRecorder recorder(config, options.stopWhenConfirmed ? confirmWindow : 0,
                         options.stopAtFirstTop, !options.traceDir.empty());
    SurrogateTracker surrogate(config, engine.partition, engine.params);

    result.run = run(engine, config, nullptr, scenario.horizon, options.monitors,
                     {&recorder, &surrogate});

    result.run.stabilizationAt = measureStabilization(recorder.trace(), confirmWindow);
    result.firstTopAt = recorder.firstTopAt();
    result.surrogateAt = surrogate.firstHold();
    result.closureClean = surrogate.closureClean();
    result.finalRanksPermutation = ranksFormPermutation(config, scenario.params.n);
    result.finalLeader = leaderOf(config.agents);
    result.finalLevel = classify(config);

    if (!options.traceDir.empty()) {
        std::filesystem::create_directories(options.traceDir);
        std::ofstream out(options.traceDir + "/trial_" + std::to_string(trialIndex) + ".events");
        for (const auto& e : recorder.events()) {
            out << e.step << ' ' << e.kind << ' ' << e.initiator << ' ' << e.responder << '\n';
        }
    }
    return result;
}

namespace {

std::optional<double> percentile(std::vector<double> values, double p) {
    if (values.empty()) return std::nullopt;
    std::sort(values.begin(), values.end());
    const double idx = p * (static_cast<double>(values.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(idx);
    const std::size_t hi = lo + 1 < values.size() ? lo + 1 : lo;
    const double frac = idx - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

std::string opt64(const std::optional<std::uint64_t>& v) {
    return v ? std::to_string(*v) : std::string();
}

}  // namespace

ExperimentRecord runExperiment(const Scenario& scenario, const ExperimentOptions& options,
                               std::ostream* out) {
    ExperimentRecord record;
    record.scenario = scenario;
    record.options = options;
    record.confirmWindowUsed =
        options.confirmWindow > 0 ? options.confirmWindow : defaultConfirmWindow(scenario.params);
    record.trials.resize(scenario.trials);

    const int workers =
        std::max(1, std::min<int>(options.threads, static_cast<int>(scenario.trials == 0
                                                                        ? 1
                                                                        : scenario.trials)));
    if (scenario.trials > 0) {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                try {
                    for (std::uint64_t idx = next.fetch_add(1); idx < scenario.trials;
                         idx = next.fetch_add(1)) {
                        record.trials[idx] = runTrial(scenario, idx, options);
                    }
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }

    std::vector<double> stabilized;
    for (const TrialResult& t : record.trials) {
        if (t.run.stabilizationAt) stabilized.push_back(static_cast<double>(*t.run.stabilizationAt));
        record.totalFullResets += t.run.fullResets;
        record.totalSoftResets += t.run.softResets;
        record.totalViolations += t.run.monitorViolations.size();
    }
    record.stabilizationMedian = percentile(stabilized, 0.5);
    record.stabilizationP95 = percentile(stabilized, 0.95);
    record.stabilizedFraction =
        scenario.trials == 0 ? 0.0
                             : static_cast<double>(stabilized.size()) /
                                   static_cast<double>(scenario.trials);

    if (out) {
        writeCsvHeader(*out);
        for (const TrialResult& t : record.trials) writeCsvTrialRow(*out, scenario, t);
        if (scenario.trials > 0) writeCsvSummaryRow(*out, record);
    }
    return record;
}

void writeCsvHeader(std::ostream& out) {
    out << "# ssle-csv v1; per-trial seeds: splitmix64(master + (trial+1)*0x9e3779b97f4a7c15)\n";
    out << "scenario,n,r,master_seed,trial,trial_seed,horizon,total_interactions,"
           "stabilization_at,full_resets,soft_resets,first_top_at,surrogate_at,closure_ok,"
           "final_ranks_permutation,final_leader,final_level,stab_median,stab_p95,"
           "monitor_violations\n";
}

void writeCsvTrialRow(std::ostream& out, const Scenario& scenario, const TrialResult& t) {
    out << scenarioKindName(scenario.kind) << ',' << scenario.params.n << ',' << scenario.params.r
        << ',' << scenario.seed << ',' << t.trialIndex << ',' << t.trialSeed << ','
        << scenario.horizon << ',' << t.run.totalInteractions << ','
        << opt64(t.run.stabilizationAt) << ',' << t.run.fullResets << ',' << t.run.softResets
        << ',' << opt64(t.firstTopAt) << ',' << opt64(t.surrogateAt) << ','
        << (t.closureClean ? 1 : 0) << ',' << (t.finalRanksPermutation ? 1 : 0) << ','
        << (t.finalLeader ? std::to_string(*t.finalLeader) : std::string()) << ','
        << hierarchyLevelName(t.finalLevel) << ",,,";
    for (std::size_t i = 0; i < t.run.monitorViolations.size(); ++i) {
        if (i) out << ';';
        out << t.run.monitorViolations[i].second << '@' << t.run.monitorViolations[i].first;
    }
    out << '\n';
}

void writeCsvSummaryRow(std::ostream& out, const ExperimentRecord& record) {
    std::ostringstream med;
    std::ostringstream p95;
    if (record.stabilizationMedian) med << *record.stabilizationMedian;
    if (record.stabilizationP95) p95 << *record.stabilizationP95;
    out << scenarioKindName(record.scenario.kind) << ',' << record.scenario.params.n << ','
        << record.scenario.params.r << ',' << record.scenario.seed << ",summary,,"
        << record.scenario.horizon << ",,," << record.totalFullResets << ','
        << record.totalSoftResets << ",,,,,,," << med.str() << ',' << p95.str() << ','
        << record.totalViolations << '\n';
}

}  // namespace ssle
