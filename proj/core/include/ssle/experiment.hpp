#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ssle/oracle.hpp"
#include "ssle/scenario.hpp"

namespace ssle {

/// Per-step record of a run: who the leader was after every interaction
/// (index 0 is the initial configuration, -1 encodes no leader) and the
/// interaction indices at which full resets and error states occurred.
struct LeaderTrace {
    std::vector<std::int32_t> leaderAt;
    std::vector<std::uint64_t> fullResetAt;
    std::vector<std::uint64_t> topAt;
};

/// Earliest step t such that, from t through the end of the trace, the
/// leader is constant and present and no full reset fires; the trace must
/// extend at least confirmWindow steps beyond t.
std::optional<std::uint64_t> measureStabilization(const LeaderTrace& trace,
                                                  std::uint64_t confirmWindow);

/// Records the leader trace and sparse protocol events during a run; can
/// stop the run once the leader has been stable for a confirmation window
/// or once the first error state appears.
class RunRecorder : public StepObserver {
public:
    struct TraceEvent {
        std::uint64_t step;
        std::string kind;
        int initiator;
        int responder;
    };

    RunRecorder(const Configuration& initial, std::uint64_t stopAfterStableFor,
                bool stopAtFirstTop, bool keepEvents);

    void onStep(const Configuration& config, const StepEvents& events) override;
    bool wantStop() const override;

    const LeaderTrace& trace() const { return trace_; }
    const std::vector<TraceEvent>& events() const { return events_; }
    std::optional<std::uint64_t> firstTopAt() const {
        return trace_.topAt.empty() ? std::nullopt : std::optional(trace_.topAt.front());
    }

private:
    LeaderTrace trace_;
    std::vector<TraceEvent> events_;
    std::uint64_t step_ = 0;
    std::uint64_t stableFor_ = 0;
    std::uint64_t stopAfterStableFor_;  // 0 disables the stop
    bool stopAtFirstTop_;
    bool keepEvents_;
};

struct TrialResult {
    std::uint64_t trialIndex = 0;
    std::uint64_t trialSeed = 0;
    RunResult run;
    std::optional<std::uint64_t> firstTopAt;
    std::optional<std::uint64_t> surrogateAt;
    bool closureClean = true;
    bool finalRanksPermutation = false;
    std::optional<int> finalLeader;
    HierarchyLevel finalLevel = HierarchyLevel::C0;
};

struct ExperimentOptions {
    std::uint64_t confirmWindow = 0;  ///< 0: default 20 * (n^2/r) * ln n
    bool stopWhenConfirmed = true;    ///< stop a trial once stabilization is confirmed
    bool stopAtFirstTop = false;      ///< stop a trial at the first error state
    int threads = 1;
    std::string traceDir;             ///< when set, per-trial event traces are written here
    std::vector<Monitor> monitors;
};

struct ExperimentRecord {
    Scenario scenario;
    ExperimentOptions options;
    std::uint64_t confirmWindowUsed = 0;
    std::vector<TrialResult> trials;

    std::optional<double> stabilizationMedian;
    std::optional<double> stabilizationP95;
    double stabilizedFraction = 0.0;
    std::uint64_t totalFullResets = 0;
    std::uint64_t totalSoftResets = 0;
    std::uint64_t totalViolations = 0;
};

std::uint64_t defaultConfirmWindow(const Params& params);

/// Run one seeded trial of a scenario. The trial seed drives both the
/// scenario generator and the interaction schedule.
TrialResult runTrial(const Scenario& scenario, std::uint64_t trialIndex,
                     const ExperimentOptions& options);

/// Run all trials (in trial order across `threads` workers), compute the
/// summary, and stream the CSV to `out` when given.
ExperimentRecord runExperiment(const Scenario& scenario, const ExperimentOptions& options,
                               std::ostream* out);

/// CSV emission: a version header line, one row per trial, one summary row.
void writeCsvHeader(std::ostream& out);
void writeCsvTrialRow(std::ostream& out, const Scenario& scenario, const TrialResult& trial);
void writeCsvSummaryRow(std::ostream& out, const ExperimentRecord& record);

}  // namespace ssle
