// aoisim: command-line front end for the AoI relay scheduling library.
//
//   aoisim simulate  --config exp.cfg [--trajectories]
//   aoisim coupled   --config exp.cfg [--require-dominance]
//   aoisim exact     --config exp.cfg
//   aoisim solve-dp  --config exp.cfg
//   aoisim train-q   --config exp.cfg [--episodes N ...]
//   aoisim verify    [--out report.txt]
//   aoisim reproduce table1|fig2..fig7 [--out DIR]
//
// Exit codes: 0 success, 1 usage or configuration error, 2 a check failed,
// 3 an oracle refused the instance as too large.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "aoi/commands.hpp"

namespace {

struct RunFlags {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> n_runs;
    aoi::RunOptions options;
};

void add_run_flags(CLI::App &cmd, RunFlags &flags)
{
    cmd.add_option("-c,--config", flags.config, "experiment config file (key=value lines)")->required();
    cmd.add_option("-o,--out", flags.out, "output path (overrides the config's out key)");
    cmd.add_option("--seed", flags.seed, "master seed (overrides the config)");
    cmd.add_option("--n-runs", flags.n_runs, "number of runs (overrides the config)");
    cmd.add_option("--state-cap", flags.options.state_cap, "DP reachable-state cap")->capture_default_str();
    cmd.add_option("--path-cap", flags.options.path_cap, "exact evaluation branch cap")->capture_default_str();
    cmd.add_option("--q-table", flags.options.q_table, "load a saved Q table instead of training");
    cmd.add_option("--dp-table", flags.options.dp_table, "load a saved DP table instead of solving");
}

// Reads and parses the config, applying command-line overrides.
aoi::RunOptions load_options(const RunFlags &flags)
{
    std::ifstream in(flags.config, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot read config " + flags.config);
    std::ostringstream text;
    text << in.rdbuf();
    aoi::RunOptions options = flags.options;
    options.experiment = aoi::parse_config(text.str());
    if (!flags.out.empty())
        options.experiment.out = flags.out;
    if (flags.seed)
        options.experiment.seed = *flags.seed;
    if (flags.n_runs) {
        if (*flags.n_runs < 1)
            throw std::invalid_argument("--n-runs must be at least 1");
        options.experiment.n_runs = *flags.n_runs;
    }
    return options;
}

struct QFlags {
    bool large = false;
    std::optional<std::uint64_t> episodes;
    std::optional<double> alpha;
    std::optional<double> epsilon;
    std::optional<double> epsilon_final;
    std::optional<int> clip;
    std::optional<double> initial_value;
    bool no_time_index = false;
    bool constant_rate = false;
    std::uint64_t eval_interval = 0;
    std::uint64_t eval_runs = 100;
};

aoi::QHyperparameters q_hyper(const QFlags &f, const aoi::NetworkConfig &cfg)
{
    auto h = f.large ? aoi::QHyperparameters::large_instance() : aoi::QHyperparameters::defaults_for(cfg);
    if (f.episodes)
        h.episodes = *f.episodes;
    if (f.alpha)
        h.alpha = *f.alpha;
    if (f.epsilon)
        h.epsilon = *f.epsilon;
    if (f.epsilon_final)
        h.epsilon_final = *f.epsilon_final < 0 ? std::nullopt : std::optional<double>(*f.epsilon_final);
    if (f.clip)
        h.clip_cap = *f.clip;
    if (f.initial_value)
        h.initial_value = *f.initial_value;
    if (f.no_time_index)
        h.time_indexed = false;
    if (f.constant_rate)
        h.visit_count_rate = false;
    h.eval_interval = f.eval_interval > 0 ? f.eval_interval : std::max<std::uint64_t>(1, h.episodes / 20);
    h.eval_runs = f.eval_runs;
    h.validate();
    return h;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Age-of-Information relay scheduling: simulation, oracles and checks"};
    app.require_subcommand(1);

    RunFlags sim_flags, coupled_flags, exact_flags, dp_flags, q_flags_run;
    QFlags q_flags;

    auto *sim = app.add_subcommand("simulate", "Monte Carlo summary CSV for the configured policies");
    add_run_flags(*sim, sim_flags);
    sim->add_flag("--trajectories", sim_flags.options.trajectories, "also write per-slot trajectory CSVs");

    auto *cpl = app.add_subcommand("coupled", "runs all policies on shared outage tapes");
    add_run_flags(*cpl, coupled_flags);
    cpl->add_flag("--require-dominance", coupled_flags.options.require_dominance,
                  "exit 2 if any policy has a smaller sum AoI than the first policy in some slot");

    auto *ex = app.add_subcommand("exact", "exact expected value by outcome enumeration");
    add_run_flags(*ex, exact_flags);

    auto *dp = app.add_subcommand("solve-dp", "finite-horizon optimal policy by backward induction");
    add_run_flags(*dp, dp_flags);

    auto *tq = app.add_subcommand("train-q", "train the tabular Q-learning policy");
    add_run_flags(*tq, q_flags_run);
    tq->add_flag("--large-preset", q_flags.large, "coarse state preset for K=5, T=20 sized instances");
    tq->add_option("--episodes", q_flags.episodes, "training episodes");
    tq->add_option("--alpha", q_flags.alpha, "learning rate floor in (0,1]");
    tq->add_option("--epsilon", q_flags.epsilon, "initial exploration rate");
    tq->add_option("--epsilon-final", q_flags.epsilon_final, "final exploration rate (negative: constant)");
    tq->add_option("--clip", q_flags.clip, "AoI clip cap for the state key");
    tq->add_option("--initial-value", q_flags.initial_value, "value of unvisited actions");
    tq->add_flag("--no-time-index", q_flags.no_time_index, "leave the slot index out of the state key");
    tq->add_flag("--constant-rate", q_flags.constant_rate, "use alpha for every update");
    tq->add_option("--eval-interval", q_flags.eval_interval, "episodes between curve points (default episodes/20)");
    tq->add_option("--eval-runs", q_flags.eval_runs, "runs per curve point")->capture_default_str();

    aoi::VerifyOptions verify_options;
    auto *ver = app.add_subcommand("verify", "run every theory check over the default instance sweep");
    ver->add_option("-o,--out", verify_options.out, "also write the report to this file");
    ver->add_option("--search-budget", verify_options.search_budget, "exhaustive search budget")
        ->capture_default_str();
    ver->add_option("--property-runs", verify_options.property_runs, "trajectories per property sweep")
        ->capture_default_str();
    ver->add_option("--seed", verify_options.seed, "seed of the property sweeps")->capture_default_str();

    std::string target, out_dir = ".";
    std::uint64_t repro_runs = 10'000, repro_seed = 1;
    auto *rep = app.add_subcommand("reproduce", "emit the data behind a table or figure preset");
    rep->add_option("target", target, "table1, fig2, ..., fig7")->required();
    rep->add_option("-o,--out", out_dir, "output directory")->capture_default_str();
    rep->add_option("--n-runs", repro_runs, "Monte Carlo runs per policy")->capture_default_str();
    rep->add_option("--seed", repro_seed, "master seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(aoi::ExitCode::usage);
    }

    auto run = [&](const RunFlags &flags, auto command) {
        return aoi::execute([&] { return command(load_options(flags)); }, std::cout, std::cerr);
    };
    if (sim->parsed())
        return run(sim_flags, aoi::simulate);
    if (cpl->parsed())
        return run(coupled_flags, aoi::coupled);
    if (ex->parsed())
        return run(exact_flags, aoi::exact);
    if (dp->parsed())
        return run(dp_flags, aoi::solve_dp);
    if (tq->parsed())
        return run(q_flags_run, [&](aoi::RunOptions options) {
            options.q_hyper = q_hyper(q_flags, options.experiment.network);
            return aoi::train_q(options);
        });
    if (ver->parsed())
        return aoi::execute([&] { return aoi::verify(verify_options); }, std::cout, std::cerr);
    return aoi::execute([&] { return aoi::reproduce(target, out_dir, repro_runs, repro_seed); }, std::cout,
                        std::cerr);
}
