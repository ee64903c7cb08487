#include "aoi/qlearning.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "aoi/format.hpp"
#include "aoi/policy.hpp"
#include "aoi/sim.hpp"

namespace aoi {

QHyperparameters QHyperparameters::defaults_for(const NetworkConfig &cfg)
{
    QHyperparameters h;
    h.clip_cap = std::min(cfg.T, 12);
    return h;
}

QHyperparameters QHyperparameters::large_instance()
{
    QHyperparameters h;
    h.clip_cap = 4;
    h.time_indexed = false;
    h.initial_value = -0.5;
    h.episodes = 200'000;
    return h;
}

void QHyperparameters::validate() const
{
    if (clip_cap < 2)
        throw DomainError("clip cap must be at least 2");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("learning rate must lie in (0,1]");
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw DomainError("exploration rate must lie in [0,1]");
    if (epsilon_final && !(*epsilon_final >= 0.0 && *epsilon_final <= 1.0))
        throw DomainError("final exploration rate must lie in [0,1]");
    if (!std::isfinite(initial_value))
        throw DomainError("initial action value must be finite");
    if (episodes < 1)
        throw DomainError("episode count must be at least 1");
}

QTable::QTable(NetworkConfig cfg, QHyperparameters hyper)
    : config_(std::move(cfg)), hyper_(hyper), action_count_(ActionSpace(config_).size())
{
}

StateKey QTable::key(const AoIState &state) const
{
    const Age cap = hyper_.clip_cap;
    StateKey k;
    k.values.reserve(state.g.size() * 2 + 1);
    if (hyper_.time_indexed)
        k.values.push_back(std::min(state.t, cap));
    for (Age v : state.g)
        k.values.push_back(std::min(v, cap));
    for (Age v : state.h)
        k.values.push_back(std::min(v, cap));
    return k;
}

const std::vector<double> *QTable::values(const AoIState &state) const
{
    auto it = table_.find(key(state));
    return it == table_.end() ? nullptr : &it->second;
}

std::vector<double> &QTable::values_mut(const AoIState &state)
{
    auto [it, inserted] = table_.try_emplace(key(state));
    if (inserted)
        it->second.assign(action_count_, hyper_.initial_value);
    return it->second;
}

std::vector<std::uint32_t> &QTable::counts_mut(const AoIState &state)
{
    auto [it, inserted] = counts_.try_emplace(key(state));
    if (inserted)
        it->second.assign(action_count_, 0);
    return it->second;
}

double QTable::max_value(const AoIState &state) const
{
    const auto *v = values(state);
    return v ? *std::max_element(v->begin(), v->end()) : hyper_.initial_value;
}

std::size_t QTable::best_action(const AoIState &state) const
{
    const auto *v = values(state);
    if (!v)
        return 0;
    // max_element returns the first maximum, i.e. the lowest canonical index.
    return static_cast<std::size_t>(std::max_element(v->begin(), v->end()) - v->begin());
}

void QTable::save(std::ostream &out) const
{
    out << "# aoi q table v1: key_1..key_n action_index value\n";
    out << "# hyper: clip alpha epsilon epsilon_final episodes time_indexed eval_interval eval_runs "
           "count_rate initial_value\n";
    write_instance(out, config_);
    out << "hyper " << hyper_.clip_cap << ' ' << format_double(hyper_.alpha) << ' '
        << format_double(hyper_.epsilon) << ' '
        << (hyper_.epsilon_final ? format_double(*hyper_.epsilon_final) : std::string("-")) << ' '
        << hyper_.episodes << ' ' << (hyper_.time_indexed ? 1 : 0) << ' ' << hyper_.eval_interval << ' '
        << hyper_.eval_runs << ' ' << (hyper_.visit_count_rate ? 1 : 0) << ' '
        << format_double(hyper_.initial_value) << '\n';
    std::vector<const std::pair<const StateKey, std::vector<double>> *> rows;
    rows.reserve(table_.size());
    for (const auto &entry : table_)
        rows.push_back(&entry);
    std::sort(rows.begin(), rows.end(),
              [](const auto *a, const auto *b) { return a->first.values < b->first.values; });
    for (const auto *row : rows) {
        std::string prefix;
        for (Age v : row->first.values)
            prefix += std::to_string(v) + ' ';
        for (std::size_t a = 0; a < row->second.size(); ++a)
            out << prefix << a << ' ' << format_double(row->second[a]) << '\n';
    }
}

QTable QTable::load(std::istream &in)
{
    NetworkConfig cfg = read_instance(in);
    QHyperparameters hyper;
    std::string line;
    while (std::getline(in, line) && (line.empty() || line[0] == '#')) {
    }
    std::istringstream head(line);
    std::string tag, final_eps;
    int time_indexed = 1, count_rate = 0;
    std::string alpha, eps, init;
    head >> tag >> hyper.clip_cap >> alpha >> eps >> final_eps >> hyper.episodes >> time_indexed >>
        hyper.eval_interval >> hyper.eval_runs >> count_rate >> init;
    if (!head || tag != "hyper")
        throw std::runtime_error("malformed 'hyper' line in Q table");
    hyper.alpha = std::stod(alpha);
    hyper.epsilon = std::stod(eps);
    hyper.epsilon_final.reset();
    if (final_eps != "-")
        hyper.epsilon_final = std::stod(final_eps);
    hyper.visit_count_rate = count_rate != 0;
    hyper.initial_value = std::stod(init);
    hyper.time_indexed = time_indexed != 0;
    hyper.validate();

    QTable table(cfg, hyper);
    const std::size_t width = 2 * static_cast<std::size_t>(cfg.K) + (hyper.time_indexed ? 1 : 0);
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream fields(line);
        StateKey key;
        key.values.resize(width);
        for (auto &v : key.values)
            fields >> v;
        std::size_t a = 0;
        std::string value;
        fields >> a >> value;
        if (!fields || a >= table.action_count_)
            throw std::runtime_error("malformed Q table line: " + line);
        auto [it, inserted] = table.table_.try_emplace(std::move(key));
        if (inserted)
            it->second.assign(table.action_count_, hyper.initial_value);
        it->second[a] = std::stod(value);
    }
    return table;
}

namespace {

// Same draws as random_action, which takes space.at(rng.below(size)).
std::size_t q_action_index(const QTable &table, std::size_t n_actions, const AoIState &state, double epsilon,
                           CounterRng &rng)
{
    if (epsilon >= 1.0)
        return rng.below(n_actions);
    if (epsilon > 0.0 && rng.uniform() < epsilon)
        return rng.below(n_actions);
    return table.best_action(state);
}

} // namespace

Action q_action(const QTable &table, const ActionSpace &space, const AoIState &state, double epsilon,
                CounterRng &rng)
{
    return space.at(q_action_index(table, space.size(), state, epsilon, rng));
}

namespace {

constexpr std::uint64_t kTrainingStream = 0x7172'6169'6e00ULL;
constexpr std::uint64_t kEvaluationStream = 0x6576'616c'0000ULL;

double evaluate_table(const NetworkConfig &cfg, const QTable &table, const ActionSpace &space,
                      std::uint64_t runs, std::uint64_t seed)
{
    double sum = 0.0;
    for (std::uint64_t run = 0; run < runs; ++run) {
        const auto tape = OutageTape::derive(seed, run, cfg.T, cfg.S, cfg.U);
        AoIState state = initial_state(cfg);
        double cost = weighted_sum(state, cfg.weights, Node::destination);
        for (Age t = 1; t < cfg.T; ++t) {
            const Action a = space.at(table.best_action(state));
            state = step(cfg, state, a, tape.draws(cfg, a, t));
            cost += weighted_sum(state, cfg.weights, Node::destination);
        }
        sum += cost / cfg.T;
    }
    return sum / static_cast<double>(runs);
}

} // namespace

QTrainingResult train_q_learning(const NetworkConfig &cfg, const QHyperparameters &hyper, std::uint64_t seed)
{
    cfg.validate();
    hyper.validate();
    const ActionSpace space(cfg);
    const std::vector<Action> actions = feasible_actions(cfg);
    QTrainingResult result{QTable(cfg, hyper), {}};
    QTable &table = result.table;
    const std::uint64_t tape_seed = mix_key({seed, kTrainingStream});
    const std::uint64_t eval_seed = mix_key({seed, kEvaluationStream});
    const double inv_T = 1.0 / static_cast<double>(cfg.T);

    for (std::uint64_t ep = 0; ep < hyper.episodes; ++ep) {
        double epsilon = hyper.epsilon;
        if (hyper.epsilon_final && hyper.episodes > 1)
            epsilon += (*hyper.epsilon_final - hyper.epsilon) * static_cast<double>(ep) /
                       static_cast<double>(hyper.episodes - 1);
        const auto tape = OutageTape::derive(tape_seed, ep, cfg.T, cfg.S, cfg.U);
        AoIState state = initial_state(cfg);
        for (Age t = 1; t < cfg.T; ++t) {
            CounterRng rng(mix_key({tape_seed, ep, static_cast<std::uint64_t>(t),
                                    static_cast<std::uint64_t>(Channel::policy)}));
            const std::size_t a = q_action_index(table, actions.size(), state, epsilon, rng);
            const Action &action = actions[a];
            AoIState next = step(cfg, state, action, tape.draws(cfg, action, t));
            double target = -weighted_sum(next, cfg.weights, Node::destination) * inv_T;
            if (next.t < cfg.T)
                target += table.max_value(next);
            auto &v = table.values_mut(state);
            double rate = hyper.alpha;
            if (hyper.visit_count_rate) {
                const auto n = ++table.counts_mut(state)[a];
                rate = std::max(rate, 1.0 / n);
            }
            v[a] += rate * (target - v[a]);
            state = std::move(next);
        }
        if (hyper.eval_interval > 0 && ((ep + 1) % hyper.eval_interval == 0 || ep + 1 == hyper.episodes))
            result.curve.push_back({ep + 1, evaluate_table(cfg, table, space, hyper.eval_runs, eval_seed)});
    }
    return result;
}

} // namespace aoi
