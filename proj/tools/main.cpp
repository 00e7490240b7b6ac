// sslesim: experiment driver for the self-stabilizing leader-election
// simulator. Subcommands:
//   run            one scenario cell, CSV per trial plus a summary row
//   sweep          cartesian product over n and r lists, one merged CSV
//   soundness-bfs  exhaustive exploration of the collision detector at
//                  model-checking scale
//   check          quick invariant battery over generators and short runs
//
// All flags can also be supplied through --config <file> (TOML-style keys
// mirroring the flag names); command-line values win.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ssle/experiment.hpp"
#include "ssle/oracle.hpp"

namespace {

struct RunFlags {
    int n = 16;
    int r = 4;
    std::string scenario = "cleanTriggered";
    std::uint64_t trials = 10;
    std::uint64_t seed = 1;
    std::uint64_t horizon = 0;  // 0: auto from (n, r)
    std::uint64_t confirmWindow = 0;
    std::string rngMode = "true-random";
    std::string out;
    std::string traceDir;
    int threads = 1;
    int duplicates = 2;
    int corruptedCells = 3;
    int generationSpread = 6;
    std::string customFile;
    bool stopAtTop = false;
    bool runToHorizon = false;
};

std::uint64_t autoHorizon(const ssle::Params& params, std::uint64_t confirmWindow) {
    const double unit =
        static_cast<double>(params.n) * params.n / params.r * params.logN();
    return static_cast<std::uint64_t>(150.0 * unit) + 2 * confirmWindow + 1;
}

ssle::Scenario makeScenario(const RunFlags& flags, int n, int r) {
    ssle::Scenario s;
    s.kind = ssle::scenarioKindFromName(flags.scenario);
    s.params = ssle::Params(n, r);
    if (flags.rngMode == "synthetic-coins") {
        s.params.rngMode = ssle::RngMode::SyntheticCoins;
    } else if (flags.rngMode != "true-random") {
        throw CLI::ValidationError("--rng-mode must be true-random or synthetic-coins");
    }
    s.params.validate();
    s.seed = flags.seed;
    s.trials = flags.trials;
    s.duplicates = flags.duplicates;
    s.corruptedCells = flags.corruptedCells;
    s.generationSpread = flags.generationSpread;
    s.customFile = flags.customFile;

    const std::uint64_t window =
        flags.confirmWindow > 0 ? flags.confirmWindow : ssle::defaultConfirmWindow(s.params);
    s.horizon = flags.horizon > 0 ? flags.horizon : autoHorizon(s.params, window);
    return s;
}

ssle::ExperimentOptions makeOptions(const RunFlags& flags) {
    ssle::ExperimentOptions opts;
    opts.confirmWindow = flags.confirmWindow;
    opts.stopWhenConfirmed = !flags.runToHorizon;
    opts.stopAtFirstTop = flags.stopAtTop;
    opts.threads = flags.threads;
    opts.traceDir = flags.traceDir;
    return opts;
}

void addRunFlags(CLI::App* cmd, RunFlags& flags, bool listMode) {
    if (!listMode) {
        cmd->add_option("--n", flags.n, "population size");
        cmd->add_option("--r", flags.r, "trade-off parameter");
    }
    cmd->add_option("--scenario", flags.scenario,
                    "cleanTriggered|fullyDormant|correctRankedVerifiers|duplicateRanks|"
                    "corruptedMessages|mixedGenerations|uniformRandomStates|custom");
    cmd->add_option("--trials", flags.trials, "independent seeded runs");
    cmd->add_option("--seed", flags.seed, "master seed");
    cmd->add_option("--horizon", flags.horizon, "max interactions per trial (0 = auto)");
    cmd->add_option("--confirm-window", flags.confirmWindow,
                    "stabilization confirmation window (0 = 20*(n^2/r)*ln n)");
    cmd->add_option("--rng-mode", flags.rngMode, "true-random|synthetic-coins");
    cmd->add_option("--out", flags.out, "CSV output path (default stdout)");
    cmd->add_option("--trace", flags.traceDir, "write per-trial event traces to this directory");
    cmd->add_option("--threads", flags.threads, "worker threads over trials");
    cmd->add_option("--duplicates", flags.duplicates, "duplicateRanks: agents sharing one rank");
    cmd->add_option("--corrupted-cells", flags.corruptedCells,
                    "corruptedMessages: flipped message cells");
    cmd->add_option("--generation-spread", flags.generationSpread,
                    "mixedGenerations: generations 0..spread-1");
    cmd->add_option("--custom-file", flags.customFile, "custom: configuration JSON");
    cmd->add_flag("--stop-at-top", flags.stopAtTop, "stop each trial at the first error state");
    cmd->add_flag("--run-to-horizon", flags.runToHorizon,
                  "disable early stop after confirmed stabilization");
}

int cmdRun(const RunFlags& flags) {
    const ssle::Scenario scenario = makeScenario(flags, flags.n, flags.r);
    const ssle::ExperimentOptions opts = makeOptions(flags);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!flags.out.empty()) {
        file.open(flags.out);
        if (!file) throw CLI::ValidationError("cannot open " + flags.out);
        out = &file;
    }

    const auto record = ssle::runExperiment(scenario, opts, out);
    std::cerr << "scenario=" << ssle::scenarioKindName(scenario.kind) << " n=" << flags.n
              << " r=" << flags.r << " trials=" << scenario.trials
              << " stabilized=" << record.stabilizedFraction * 100.0 << "%\n";
    return 0;
}

int cmdSweep(const RunFlags& flags, const std::vector<int>& nList, const std::vector<int>& rList) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!flags.out.empty()) {
        file.open(flags.out);
        if (!file) throw CLI::ValidationError("cannot open " + flags.out);
        out = &file;
    }

    ssle::writeCsvHeader(*out);
    for (int n : nList) {
        for (int r : rList) {
            if (r < 1 || r > n / 2) {
                std::cerr << "skip n=" << n << " r=" << r << " (need 1 <= r <= n/2)\n";
                continue;
            }
            const ssle::Scenario scenario = makeScenario(flags, n, r);
            const ssle::ExperimentOptions opts = makeOptions(flags);
            const auto record = ssle::runExperiment(scenario, opts, nullptr);
            for (const auto& trial : record.trials) {
                ssle::writeCsvTrialRow(*out, scenario, trial);
            }
            if (scenario.trials > 0) ssle::writeCsvSummaryRow(*out, record);
            std::cerr << "n=" << n << " r=" << r
                      << " stabilized=" << record.stabilizedFraction * 100.0 << "%\n";
        }
    }
    return 0;
}

int cmdSoundness(const ssle::SoundnessOptions& opts) {
    const ssle::SoundnessResult res = ssle::exploreSoundness(opts);
    std::cout << "top_reachable=" << (res.topReachable ? "true" : "false")
              << " states_visited=" << res.statesVisited << " transitions=" << res.transitions
              << " frontier_exhausted=" << (res.frontierExhausted ? "true" : "false") << '\n';
    // 0: definitive answer; 2: state budget ran out before an answer.
    return res.topReachable || res.frontierExhausted ? 0 : 2;
}

int cmdCheck(std::uint64_t seed) {
    int failures = 0;
    auto report = [&failures](const std::string& name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
        if (!ok) ++failures;
    };

    // Partition bounds over a grid.
    {
        bool ok = true;
        for (int n = 2; n <= 64 && ok; ++n) {
            for (int r = 1; r <= n / 2 && ok; ++r) {
                ssle::GroupPartition p(n, r);
                int covered = 0;
                for (int b = 0; b < p.blockCount(); ++b) {
                    const int size = p.blockHiAt(b) - p.blockLoAt(b) + 1;
                    covered += size;
                    if (size < r / 2 || size > r) {
                        if (!(r == 1 && size == 1)) ok = false;
                    }
                }
                if (covered != n) ok = false;
            }
        }
        report("partition sizes and coverage", ok);
    }

    // Scenario generators emit invariant-respecting configurations.
    {
        bool ok = true;
        for (auto kind : {ssle::ScenarioKind::CleanTriggered, ssle::ScenarioKind::FullyDormant,
                          ssle::ScenarioKind::CorrectRankedVerifiers,
                          ssle::ScenarioKind::DuplicateRanks, ssle::ScenarioKind::CorruptedMessages,
                          ssle::ScenarioKind::MixedGenerations,
                          ssle::ScenarioKind::UniformRandomStates}) {
            ssle::Scenario s;
            s.kind = kind;
            s.params = ssle::Params(10, 3);
            const auto config = ssle::buildScenario(s, seed);
            ssle::GroupPartition partition(10, 3);
            if (!ssle::validateConfiguration(config, partition, s.params).empty()) ok = false;
        }
        report("scenario generators respect type invariants", ok);
    }

    // Determinism under a fixed seed.
    {
        ssle::Scenario s;
        s.kind = ssle::ScenarioKind::UniformRandomStates;
        s.params = ssle::Params(12, 4);
        s.horizon = 4000;
        s.trials = 2;
        s.seed = seed;
        ssle::ExperimentOptions opts;
        opts.stopWhenConfirmed = false;
        std::ostringstream a;
        std::ostringstream b;
        ssle::runExperiment(s, opts, &a);
        ssle::runExperiment(s, opts, &b);
        report("determinism under fixed seed", a.str() == b.str());
    }

    // Short adversarial run with the invariant monitors active.
    {
        ssle::Scenario s;
        s.kind = ssle::ScenarioKind::UniformRandomStates;
        s.params = ssle::Params(10, 3);
        s.horizon = 5000;
        s.trials = 1;
        s.seed = seed;
        ssle::GroupPartition partition(10, 3);
        ssle::ExperimentOptions opts;
        opts.stopWhenConfirmed = false;
        opts.monitors.push_back(ssle::Monitor{
            "populationSize", [&s](const ssle::Configuration& c) {
                return static_cast<int>(c.agents.size()) == s.params.n;
            }});
        opts.monitors.push_back(ssle::Monitor{
            "typeInvariants", [&s, &partition](const ssle::Configuration& c) {
                return ssle::validateConfiguration(c, partition, s.params).empty();
            }});
        const auto record = ssle::runExperiment(s, opts, nullptr);
        report("type invariants hold along adversarial runs",
               record.trials.front().run.monitorViolations.empty());
    }

    // From fully dormant, an awakening within dMax * n interactions.
    {
        ssle::Scenario s;
        s.kind = ssle::ScenarioKind::FullyDormant;
        s.params = ssle::Params(8, 2);
        s.seed = seed;
        auto config = ssle::buildScenario(s, seed);
        ssle::Engine engine(s.params, seed);
        const std::uint64_t bound =
            static_cast<std::uint64_t>(s.params.dMax()) * static_cast<std::uint64_t>(s.params.n);
        const auto result = ssle::run(
            engine, config,
            [](const ssle::Configuration& c) {
                for (const auto& a : c.agents) {
                    if (a.role() != ssle::Role::Resetting) return true;
                }
                return false;
            },
            bound, {});
        bool awake = false;
        for (const auto& a : config.agents) {
            if (a.role() != ssle::Role::Resetting) awake = true;
        }
        report("dormant population awakens within dMax*n interactions",
               awake && result.totalInteractions <= bound);
    }

    std::cout << (failures == 0 ? "all checks passed\n" : "some checks FAILED\n");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"population-protocol simulator for self-stabilizing leader election by ranking"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "flag defaults from a config file, one [section] per subcommand");
    app.allow_config_extras(CLI::config_extras_mode::error);

    RunFlags flags;
    std::vector<int> nList{8, 16};
    std::vector<int> rList{2, 4};
    ssle::SoundnessOptions soundness;
    std::uint64_t checkSeed = 1;

    CLI::App* runCmd = app.add_subcommand("run", "run one scenario cell");
    addRunFlags(runCmd, flags, false);

    CLI::App* sweepCmd = app.add_subcommand("sweep", "cartesian sweep over n and r lists");
    sweepCmd->add_option("--n-list", nList, "population sizes")->delimiter(',');
    sweepCmd->add_option("--r-list", rList, "trade-off parameters")->delimiter(',');
    addRunFlags(sweepCmd, flags, true);

    CLI::App* bfsCmd =
        app.add_subcommand("soundness-bfs", "exhaustive shrunk-parameter exploration");
    bfsCmd->add_option("--group-size", soundness.groupSize, "agents in the explored group");
    bfsCmd->add_flag("--duplicate-rank", soundness.duplicateRank, "plant a duplicate rank");
    bfsCmd->add_option("--ids-per-rank", soundness.idsPerRank, "message IDs per rank");
    bfsCmd->add_option("--sig-space", soundness.sigSpace, "signature range size");
    bfsCmd->add_option("--sig-refresh", soundness.sigRefresh, "signature refresh period");
    bfsCmd->add_option("--state-budget", soundness.stateBudget, "visited-state budget");

    CLI::App* checkCmd = app.add_subcommand("check", "invariant battery");
    checkCmd->add_option("--seed", checkSeed, "seed for the checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (runCmd->parsed()) return cmdRun(flags);
        if (sweepCmd->parsed()) return cmdSweep(flags, nList, rList);
        if (bfsCmd->parsed()) return cmdSoundness(soundness);
        if (checkCmd->parsed()) return cmdCheck(checkSeed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
