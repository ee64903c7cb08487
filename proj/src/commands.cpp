#include "aoi/commands.hpp"

#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "aoi/format.hpp"

namespace aoi {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path sibling(const fs::path &path, const std::string &suffix)
{
    return path.parent_path() / (path.stem().string() + suffix);
}

fs::path meta_path(const fs::path &path)
{
    fs::path p = path;
    p += ".meta.json";
    return p;
}

json hyper_json(const QHyperparameters &h)
{
    json j;
    j["clip_cap"] = h.clip_cap;
    j["learning_rate"] = h.alpha;
    j["visit_count_rate"] = h.visit_count_rate;
    j["initial_value"] = h.initial_value;
    j["epsilon"] = h.epsilon;
    j["epsilon_final"] = h.epsilon_final ? json(*h.epsilon_final) : json(nullptr);
    j["episodes"] = h.episodes;
    j["time_indexed"] = h.time_indexed;
    j["discount"] = 1.0;
    return j;
}

json learner_json(const QHyperparameters &h)
{
    json j;
    j["method"] = "tabular Q-learning over clipped AoI states";
    j["substitutes_for"] = "deep Q-network policy";
    j["hyperparameters"] = hyper_json(h);
    j["hyperparameters_origin"] = "artifact choice";
    j["reward"] = "-sum_k w_k h_k(t+1) / T per step";
    return j;
}

json base_meta(const std::string &command)
{
    json j;
    j["command"] = command;
    j["tool"] = "aoisim";
    j["mixing"] = std::string(kMixingId);
    return j;
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Policies for a run, with any tables loaded, solved or trained.
struct ResolvedPolicies {
    std::vector<PolicySpec> specs;
    std::optional<QHyperparameters> learner;
};

ResolvedPolicies resolve_policies(const RunOptions &options)
{
    const auto &exp = options.experiment;
    const auto &cfg = exp.network;
    ResolvedPolicies out;
    std::uint64_t random_streams = 0;
    std::shared_ptr<const DPTable> dp;
    std::shared_ptr<const QTable> q;
    for (PolicyKind kind : exp.policies) {
        switch (kind) {
        case PolicyKind::greedy:
            out.specs.push_back(PolicySpec::greedy());
            break;
        case PolicyKind::random:
            out.specs.push_back(PolicySpec::random(random_streams++));
            break;
        case PolicyKind::dp_optimal:
            if (!dp) {
                if (!options.dp_table.empty()) {
                    std::istringstream in(read_file(options.dp_table));
                    auto table = std::make_shared<DPTable>(DPTable::load(in));
                    if (!(table->config() == cfg))
                        throw std::invalid_argument("DP table " + options.dp_table + " was solved for " +
                                                    table->config().describe());
                    dp = table;
                } else {
                    dp = std::make_shared<DPTable>(solve_backward_induction(cfg, options.state_cap));
                }
            }
            out.specs.push_back(PolicySpec::dp_optimal(dp));
            break;
        case PolicyKind::q_learned:
            if (!q) {
                if (!options.q_table.empty()) {
                    std::istringstream in(read_file(options.q_table));
                    auto table = std::make_shared<QTable>(QTable::load(in));
                    if (!(table->config() == cfg))
                        throw std::invalid_argument("Q table " + options.q_table + " was trained on " +
                                                    table->config().describe());
                    q = table;
                } else {
                    const auto hyper = options.q_hyper.value_or(QHyperparameters::defaults_for(cfg));
                    q = std::make_shared<QTable>(train_q_learning(cfg, hyper, exp.seed).table);
                }
            }
            out.learner = q->hyper();
            out.specs.push_back(PolicySpec::q_learned(q));
            break;
        case PolicyKind::fixed_sequence:
            throw std::invalid_argument("fixed_sequence needs an explicit action list and cannot run from a config");
        }
    }
    return out;
}

fs::path output_path(const RunOptions &options, const std::string &fallback)
{
    if (!options.experiment.out.empty())
        return options.experiment.out;
    if (!options.default_out.empty())
        return options.default_out;
    return fallback;
}

std::string value_line(const RunSummary &s)
{
    return s.policy + "  V=" + format_double(s.mean_value) + "  95% half-width=" + format_double(s.half_width) +
           "  runs=" + std::to_string(s.n_runs) + '\n';
}

json run_meta(const std::string &command, const RunOptions &options, const ResolvedPolicies &policies)
{
    json meta = base_meta(command);
    meta["config"] = render_config(options.experiment);
    if (policies.learner)
        meta["learned_policy"] = learner_json(*policies.learner);
    return meta;
}

} // namespace

CommandResult simulate(const RunOptions &options)
{
    const auto &exp = options.experiment;
    const auto &cfg = exp.network;
    const auto policies = resolve_policies(options);
    const fs::path out = output_path(options, "summary.csv");
    CommandResult result;
    std::vector<RunSummary> summaries;
    json meta = run_meta("simulate", options, policies);
    if (exp.coupled) {
        auto coupled_run = run_coupled(cfg, policies.specs, exp.seed, exp.n_runs);
        summaries = std::move(coupled_run.summaries);
        meta["warnings"] = coupled_run.warnings;
        for (const auto &w : coupled_run.warnings)
            result.report += "warning: " + w + '\n';
    } else {
        for (const auto &p : policies.specs)
            summaries.push_back(run_monte_carlo(cfg, p, exp.n_runs, exp.seed));
    }
    result.artifacts.push_back({out, summary_csv(summaries)});
    if (options.trajectories) {
        for (const auto &p : policies.specs) {
            std::vector<Trajectory> runs;
            for (std::uint64_t run = 0; run < exp.n_runs; ++run)
                runs.push_back(run_episode(cfg, p, OutageTape::derive(exp.seed, run, cfg.T, cfg.S, cfg.U)));
            std::string suffix = "." + p.name();
            if (p.kind == PolicyKind::random && p.stream_id > 0)
                suffix += std::to_string(p.stream_id);
            result.artifacts.push_back({sibling(out, suffix + ".trajectory.csv"), trajectory_csv(runs)});
        }
    }
    json values = json::object();
    for (const auto &s : summaries) {
        result.report += value_line(s);
        values[s.policy] = {{"mean_value", s.mean_value}, {"half_width", s.half_width}};
    }
    meta["values"] = values;
    result.artifacts.push_back({meta_path(out), meta.dump(2) + '\n'});
    return result;
}

CommandResult coupled(const RunOptions &options)
{
    const auto &exp = options.experiment;
    const auto &cfg = exp.network;
    const auto policies = resolve_policies(options);
    const fs::path out = output_path(options, "coupled.csv");
    const auto run = run_coupled(cfg, policies.specs, exp.seed, exp.n_runs);
    CommandResult result;
    for (const auto &w : run.warnings)
        result.report += "warning: " + w + '\n';

    std::ostringstream paired;
    paired << "run,policy,paired_difference,dominance_violations\n";
    for (std::size_t r = 0; r < run.sum_h.size(); ++r) {
        for (std::size_t i = 0; i < policies.specs.size(); ++i) {
            std::uint64_t below = 0;
            for (std::size_t t = 0; t < run.sum_h[r][i].size(); ++t)
                below += run.sum_h[r][i][t] < run.sum_h[r][run.reference][t] ? 1 : 0;
            paired << r << ',' << run.summaries[i].policy << ',' << format_double(run.paired_difference[r][i])
                   << ',' << below << '\n';
        }
    }
    result.artifacts.push_back({out, summary_csv(run.summaries)});
    result.artifacts.push_back({sibling(out, ".paired.csv"), paired.str()});

    json meta = run_meta("coupled", options, policies);
    meta["reference"] = run.summaries[run.reference].policy;
    meta["warnings"] = run.warnings;
    json violations = json::object();
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < policies.specs.size(); ++i) {
        const auto v = run.dominance_violations(i);
        total += v;
        violations[run.summaries[i].policy] = v;
        result.report += value_line(run.summaries[i]);
        if (i != run.reference)
            result.report += "  slots below " + run.summaries[run.reference].policy + ": " + std::to_string(v) + '\n';
    }
    meta["dominance_violations"] = violations;
    result.artifacts.push_back({meta_path(out), meta.dump(2) + '\n'});
    if (options.require_dominance && total > 0)
        result.exit = ExitCode::check_failed;
    return result;
}

CommandResult exact(const RunOptions &options)
{
    const auto &cfg = options.experiment.network;
    const auto policies = resolve_policies(options);
    const fs::path out = output_path(options, "exact.csv");
    CommandResult result;
    std::ostringstream csv;
    csv << "policy,exact_value\n";
    json values = json::object();
    for (const auto &p : policies.specs) {
        const double v = exact_expected_value(cfg, p, options.path_cap);
        csv << p.name() << ',' << format_double(v) << '\n';
        result.report += p.name() + "  exact V=" + format_double(v) + '\n';
        values[p.name()] = v;
    }
    json meta = run_meta("exact", options, policies);
    meta["values"] = values;
    result.artifacts.push_back({out, csv.str()});
    result.artifacts.push_back({meta_path(out), meta.dump(2) + '\n'});
    return result;
}

CommandResult solve_dp(const RunOptions &options)
{
    const auto &cfg = options.experiment.network;
    const auto table = solve_backward_induction(cfg, options.state_cap);
    const fs::path out = output_path(options, "dp_table.txt");
    std::ostringstream text;
    table.save(text);
    CommandResult result;
    result.artifacts.push_back({out, text.str()});
    result.report = "optimal V=" + format_double(table.optimal_value()) + "  states=" +
                    std::to_string(table.state_count()) + '\n';
    return result;
}

CommandResult train_q(const RunOptions &options)
{
    const auto &exp = options.experiment;
    const auto &cfg = exp.network;
    const auto hyper = options.q_hyper.value_or(QHyperparameters::defaults_for(cfg));
    const auto trained = train_q_learning(cfg, hyper, exp.seed);
    const fs::path out = output_path(options, "q_table.txt");
    std::ostringstream text;
    trained.table.save(text);
    CommandResult result;
    result.artifacts.push_back({out, text.str()});
    const fs::path curve = sibling(out, ".curve.csv");
    result.artifacts.push_back({curve, curve_csv(trained.curve)});

    auto table = std::make_shared<QTable>(trained.table);
    const auto greedy = run_monte_carlo(cfg, PolicySpec::greedy(), exp.n_runs, exp.seed);
    const auto learned = run_monte_carlo(cfg, PolicySpec::q_learned(table), exp.n_runs, exp.seed);
    result.report = "states=" + std::to_string(table->state_count()) + '\n' + value_line(learned) + value_line(greedy);

    json meta = base_meta("train-q");
    meta["config"] = render_config(exp);
    meta["learned_policy"] = learner_json(hyper);
    meta["values"] = {{"q_learned", learned.mean_value}, {"greedy", greedy.mean_value}};
    result.artifacts.push_back({meta_path(curve), meta.dump(2) + '\n'});
    return result;
}

namespace {

// First failing report of a sweep, or a pass line describing it.
CheckReport sweep_report(const std::string &check, const std::string &instance,
                         const std::vector<CheckReport> &reports)
{
    for (const auto &r : reports) {
        if (!r.passed()) {
            CheckReport failed = r;
            failed.check = check;
            failed.detail = "first failure on " + r.instance + (r.detail.empty() ? "" : "; " + r.detail);
            failed.instance = instance;
            return failed;
        }
    }
    CheckReport ok;
    ok.check = check;
    ok.instance = instance;
    ok.detail = std::to_string(reports.size()) + " cases";
    return ok;
}

// Random instance with K <= 6 drawn from a counter stream.
NetworkConfig random_instance(std::uint64_t seed, std::uint64_t index, bool errorless, bool symmetric)
{
    CounterRng rng(mix_key({seed, 0x696e'7374ULL, index}));
    const int K = 2 + static_cast<int>(rng.below(5));
    const int S = 1 + static_cast<int>(rng.below(K - 1));
    const int U = symmetric ? S : 1 + static_cast<int>(rng.below(K - 1));
    const int T = 2 + static_cast<int>(rng.below(11));
    NetworkConfig cfg = NetworkConfig::symmetric(K, S, U, T);
    if (!symmetric)
        for (auto &w : cfg.weights)
            w = 0.05 + rng.uniform();
    if (!errorless)
        for (int k = 0; k < K; ++k) {
            cfg.p[k] = 0.6 * rng.uniform();
            cfg.q[k] = 0.6 * rng.uniform();
        }
    return cfg;
}

} // namespace

std::vector<CheckReport> verify_reports(const VerifyOptions &options)
{
    std::vector<CheckReport> reports;

    const auto table1 = NetworkConfig::symmetric(5, 3, 3, 6);
    const auto greedy_trace = run_episode(table1, PolicySpec::greedy(), OutageTape::derive(0, 0, 6, 3, 3));
    reports.push_back(check_destination_bound(greedy_trace));
    reports.push_back(check_age_sum_identity(greedy_trace));
    reports.push_back(check_reduction_order(greedy_trace));
    reports.push_back(check_reduction_balance(greedy_trace));
    reports.push_back(check_greedy_reductions(greedy_trace));

    std::vector<CheckReport> notes;
    for (int K = 2; K <= 8; ++K) {
        for (int S = 1; S < K; ++S) {
            const Age horizon = 3 * ((K + S - 1) / S + 1);
            reports.push_back(check_closed_forms(K, S, S, horizon));
            for (auto &n : printed_form_notes(K, S, S, horizon))
                notes.push_back(std::move(n));
        }
    }

    for (auto [K, S, T] : {std::tuple{3, 1, 4}, {3, 1, 6}, {4, 1, 5}, {4, 2, 4}, {5, 2, 4}, {5, 3, 5}}) {
        const auto cfg = NetworkConfig::symmetric(K, S, S, T);
        const auto traj = run_episode(cfg, PolicySpec::greedy(), OutageTape::derive(0, 0, T, S, S));
        reports.push_back(check_optimality_condition(cfg, traj, options.search_budget));
    }

    for (int K = 2; K <= 8; ++K) {
        for (int S = 1; S < K; ++S) {
            const std::uint64_t per_slot = binomial(K, S) * binomial(K, S);
            // Every horizon whose (C(K,S)^2)^T sequences fit in the budget.
            std::uint64_t count = per_slot;
            for (int T = 1; count <= options.search_budget; ++T) {
                reports.push_back(check_greedy_vs_exhaustive(NetworkConfig::symmetric(K, S, S, T), options.search_budget));
                if (count > options.search_budget / per_slot)
                    break;
                count *= per_slot;
            }
        }
    }

    for (double p : {0.1, 0.3})
        reports.push_back(check_greedy_vs_dp(NetworkConfig::symmetric(3, 1, 1, 4, p, p)));

    const auto n = options.property_runs;
    std::vector<CheckReport> destination_bound, age_sum_identity, reduction_order, balance;
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto cfg = random_instance(options.seed, i, false, false);
        const auto policy = i % 2 == 0 ? PolicySpec::random() : PolicySpec::greedy();
        destination_bound.push_back(check_destination_bound(
            run_episode(cfg, policy, OutageTape::derive(options.seed, i, cfg.T, cfg.S, cfg.U))));
    }
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto cfg = random_instance(options.seed, n + i, true, false);
        const auto traj = run_episode(cfg, PolicySpec::random(), OutageTape::derive(options.seed, n + i, cfg.T,
                                                                                  cfg.S, cfg.U));
        age_sum_identity.push_back(check_age_sum_identity(traj));
        reduction_order.push_back(check_reduction_order(traj));
    }
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto cfg = random_instance(options.seed, 2 * n + i, true, true);
        balance.push_back(check_reduction_balance(
            run_episode(cfg, PolicySpec::greedy(), OutageTape::derive(options.seed, 2 * n + i, cfg.T, cfg.S,
                                                                      cfg.U))));
    }
    const std::string size = std::to_string(n);
    reports.push_back(sweep_report("destination_bound", size + " error-prone trajectories, K<=6", destination_bound));
    reports.push_back(sweep_report("age_sum_identity", size + " errorless random-policy trajectories, K<=6", age_sum_identity));
    reports.push_back(sweep_report("reduction_order", size + " errorless random-policy trajectories, K<=6", reduction_order));
    reports.push_back(sweep_report("reduction_balance", size + " errorless symmetric greedy trajectories, K<=6",
                                   balance));

    for (auto &note : notes)
        reports.push_back(std::move(note));
    return reports;
}

CommandResult verify(const VerifyOptions &options)
{
    const auto reports = verify_reports(options);
    CommandResult result;
    std::size_t failures = 0, notes = 0;
    for (const auto &r : reports) {
        result.report += r.to_line() + '\n';
        failures += r.passed() ? 0 : 1;
        notes += r.verdict == Verdict::note ? 1 : 0;
    }
    result.report += std::to_string(reports.size() - notes) + " checks, " + std::to_string(failures) +
                     " failed, " + std::to_string(notes) + " notes\n";
    if (!options.out.empty())
        result.artifacts.push_back({options.out, result.report});
    if (failures > 0)
        result.exit = ExitCode::check_failed;
    return result;
}

NetworkConfig figure_instance(int figure)
{
    switch (figure) {
    case 2:
    case 3:
        return NetworkConfig::symmetric(5, 3, 3, 20);
    case 4:
    case 5:
        return NetworkConfig::symmetric(5, 3, 3, 20, 0.1, 0.1);
    case 6:
    case 7: {
        NetworkConfig cfg = NetworkConfig::symmetric(5, 3, 3, 20);
        cfg.weights = {0.5, 0.3, 0.2, 0.05, 0.05};
        cfg.p = {0.1, 0.1, 0.2, 0.2, 0.3};
        cfg.q = {0.3, 0.2, 0.2, 0.1, 0.1};
        return cfg;
    }
    default:
        throw std::invalid_argument("no figure preset " + std::to_string(figure) + " (expected 2..7)");
    }
}

FigureRun run_figure(int figure, std::uint64_t n_runs, std::uint64_t seed)
{
    FigureRun run;
    run.config = figure_instance(figure);
    run.hyper = QHyperparameters::large_instance();
    run.hyper.eval_interval = run.hyper.episodes / 20;
    run.hyper.eval_runs = 100;
    auto trained = train_q_learning(run.config, run.hyper, seed);
    run.curve = std::move(trained.curve);
    auto table = std::make_shared<QTable>(std::move(trained.table));
    for (const auto &p : {PolicySpec::greedy(), PolicySpec::q_learned(table), PolicySpec::random()})
        run.summaries.push_back(run_monte_carlo(run.config, p, n_runs, seed));
    return run;
}

std::string table1_csv()
{
    const auto cfg = NetworkConfig::symmetric(5, 3, 3, 6);
    const auto traj = run_episode(cfg, PolicySpec::greedy(), OutageTape::derive(0, 0, cfg.T, cfg.S, cfg.U));
    std::ostringstream out;
    out << "quantity";
    for (const auto &s : traj.slots)
        out << ',' << s.state.t;
    out << '\n';
    auto row = [&](const std::string &name, auto value) {
        out << name;
        for (const auto &s : traj.slots)
            out << ',' << value(s);
        out << '\n';
    };
    row("sum_g", [](const SlotRecord &s) { return total_age(s.state, Node::relay); });
    row("sum_h", [](const SlotRecord &s) { return total_age(s.state, Node::destination); });
    for (int k = 0; k < cfg.K; ++k)
        row("g_" + std::to_string(k + 1), [k](const SlotRecord &s) { return s.state.g[k]; });
    for (int k = 0; k < cfg.K; ++k)
        row("h_" + std::to_string(k + 1), [k](const SlotRecord &s) { return s.state.h[k]; });
    row("sample_set", [](const SlotRecord &s) { return csv_field(format_set(s.action.sample)); });
    row("update_set", [](const SlotRecord &s) { return csv_field(format_set(s.action.update)); });
    return out.str();
}

CommandResult reproduce(const std::string &target, const std::string &out_dir, std::uint64_t n_runs,
                        std::uint64_t seed)
{
    const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
    CommandResult result;
    if (target == "table1") {
        const fs::path out = dir / "table1.csv";
        result.artifacts.push_back({out, table1_csv()});
        json meta = base_meta("reproduce table1");
        meta["instance"] = NetworkConfig::symmetric(5, 3, 3, 6).describe();
        meta["tie_break"] = "lowest index";
        result.artifacts.push_back({meta_path(out), meta.dump(2) + '\n'});
        result.report = result.artifacts.front().content;
        return result;
    }
    int figure = 0;
    if (target.size() == 4 && target.rfind("fig", 0) == 0 && target[3] >= '2' && target[3] <= '7')
        figure = target[3] - '0';
    else
        throw std::invalid_argument("unknown reproduce target '" + target + "' (expected table1 or fig2..fig7)");
    if (n_runs < 1)
        throw std::invalid_argument("n_runs must be at least 1");

    const auto run = run_figure(figure, n_runs, seed);
    const fs::path out = dir / (target + ".csv");
    const bool window = figure % 2 == 1;
    result.artifacts.push_back({out, window ? window_average_csv(run.summaries) : summary_csv(run.summaries)});
    result.artifacts.push_back({dir / (target + ".training_curve.csv"), curve_csv(run.curve)});

    ExperimentConfig exp;
    exp.network = run.config;
    exp.policies = {PolicyKind::greedy, PolicyKind::q_learned, PolicyKind::random};
    exp.n_runs = n_runs;
    exp.seed = seed;
    exp.preset = target;
    json meta = base_meta("reproduce " + target);
    meta["config"] = render_config(exp);
    meta["series"] = window ? "average weighted sum AoI at the destinations over windows 1..T"
                            : "instantaneous weighted sum AoI at the destinations per slot";
    meta["learned_policy"] = learner_json(run.hyper);
    json values = json::object();
    for (const auto &s : run.summaries) {
        values[s.policy] = {{"mean_value", s.mean_value}, {"half_width", s.half_width}};
        result.report += value_line(s);
    }
    meta["values"] = values;
    result.artifacts.push_back({meta_path(out), meta.dump(2) + '\n'});
    return result;
}

int execute(const std::function<CommandResult()> &command, std::ostream &out, std::ostream &err)
{
    try {
        const CommandResult result = command();
        commit(result.artifacts);
        out << result.report;
        return static_cast<int>(result.exit);
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage);
    } catch (const BudgetExceeded &e) {
        err << "refused: " << e.what() << '\n';
        return static_cast<int>(ExitCode::budget_refused);
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage);
    }
}

} // namespace aoi
