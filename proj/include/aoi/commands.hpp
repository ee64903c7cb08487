#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aoi/dp.hpp"
#include "aoi/exhaustive.hpp"
#include "aoi/experiment.hpp"
#include "aoi/output.hpp"
#include "aoi/qlearning.hpp"
#include "aoi/theory.hpp"

namespace aoi {

enum class ExitCode : int { ok = 0, usage = 1, check_failed = 2, budget_refused = 3 };

// Files to write plus text for stdout. Nothing touches the filesystem until
// commit() is called on the artifacts.
struct CommandResult {
    ExitCode exit = ExitCode::ok;
    std::vector<Artifact> artifacts;
    std::string report;
};

struct RunOptions {
    ExperimentConfig experiment;
    // Default output path when the config has no "out" key.
    std::string default_out;
    // simulate: also write per-slot trajectory CSVs (one per policy).
    bool trajectories = false;
    // Tables to load instead of solving or training on the fly.
    std::string q_table;
    std::string dp_table;
    std::optional<QHyperparameters> q_hyper;
    std::size_t state_cap = kDefaultStateCap;
    std::uint64_t path_cap = kDefaultPathCap;
    // coupled: exit with check_failed when any policy undercuts the reference.
    bool require_dominance = false;
};

// Summary CSV for each configured policy (coupled tapes if the config asks).
CommandResult simulate(const RunOptions &options);
// Summary CSV plus a paired CSV "run,policy,paired_difference,dominance_violations"
// against the first listed policy.
CommandResult coupled(const RunOptions &options);
// "policy,exact_value" for each configured policy.
CommandResult exact(const RunOptions &options);
// DP table file; the optimal value goes to the report.
CommandResult solve_dp(const RunOptions &options);
// Q table file plus a training curve CSV.
CommandResult train_q(const RunOptions &options);

struct VerifyOptions {
    std::string out; // empty: report only
    std::uint64_t search_budget = kDefaultSearchBudget;
    std::uint64_t property_runs = 200;
    std::uint64_t seed = 1;
};

// The default instance sweep of every theory check. One report line per check;
// exit check_failed if any check fails. Notes never fail.
CommandResult verify(const VerifyOptions &options);
std::vector<CheckReport> verify_reports(const VerifyOptions &options);

// Experiment setups behind the figure presets: 2 and 3 errorless, 4 and 5
// with p = q = 0.1, 6 and 7 with unequal weights and outage probabilities.
// All use K = 5, S = U = 3, T = 20.
NetworkConfig figure_instance(int figure);

struct FigureRun {
    NetworkConfig config;
    QHyperparameters hyper;
    std::vector<CurvePoint> curve;
    std::vector<RunSummary> summaries; // greedy, q_learned, random
};

// Trains the tabular learner on the figure instance, then runs every policy
// for n_runs episodes.
FigureRun run_figure(int figure, std::uint64_t n_runs, std::uint64_t seed);

// target is "table1" or "fig2".."fig7". Files go under out_dir.
CommandResult reproduce(const std::string &target, const std::string &out_dir, std::uint64_t n_runs,
                        std::uint64_t seed);

// Greedy trace of the errorless K=5, S=U=3, T=6 network as CSV rows
// sum_g, sum_h, g_k, h_k, sample_set, update_set over columns t = 1..6.
std::string table1_csv();

// Runs the command, commits its artifacts and prints its report. Maps
// exceptions to exit codes: configuration and domain errors to usage, budget
// refusals to budget_refused.
int execute(const std::function<CommandResult()> &command, std::ostream &out, std::ostream &err);

} // namespace aoi
