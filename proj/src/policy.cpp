#include "aoi/policy.hpp"

#include <algorithm>
#include <numeric>

#include "aoi/dp.hpp"
#include "aoi/qlearning.hpp"

namespace aoi {

std::string to_string(PolicyKind kind)
{
    switch (kind) {
    case PolicyKind::greedy:
        return "greedy";
    case PolicyKind::random:
        return "random";
    case PolicyKind::dp_optimal:
        return "dp_optimal";
    case PolicyKind::q_learned:
        return "q_learned";
    case PolicyKind::fixed_sequence:
        return "fixed_sequence";
    }
    return "unknown";
}

PolicyKind parse_policy_kind(const std::string &name)
{
    for (auto kind : {PolicyKind::greedy, PolicyKind::random, PolicyKind::dp_optimal, PolicyKind::q_learned,
                      PolicyKind::fixed_sequence})
        if (to_string(kind) == name)
            return kind;
    throw std::invalid_argument("unknown policy '" + name + "'");
}

PolicySpec PolicySpec::greedy()
{
    return PolicySpec{};
}

PolicySpec PolicySpec::random(std::uint64_t stream_id)
{
    PolicySpec spec;
    spec.kind = PolicyKind::random;
    spec.stream_id = stream_id;
    return spec;
}

PolicySpec PolicySpec::dp_optimal(std::shared_ptr<const DPTable> table)
{
    PolicySpec spec;
    spec.kind = PolicyKind::dp_optimal;
    spec.dp = std::move(table);
    return spec;
}

PolicySpec PolicySpec::q_learned(std::shared_ptr<const QTable> table)
{
    PolicySpec spec;
    spec.kind = PolicyKind::q_learned;
    spec.q = std::move(table);
    return spec;
}

PolicySpec PolicySpec::fixed_sequence(std::vector<Action> actions)
{
    PolicySpec spec;
    spec.kind = PolicyKind::fixed_sequence;
    spec.sequence = std::move(actions);
    return spec;
}

std::vector<int> top_indices(std::span<const double> values, int n)
{
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return values[a] > values[b]; });
    order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(n)));
    std::sort(order.begin(), order.end());
    return order;
}

Action greedy_action(const AoIState &state, const NetworkConfig &cfg)
{
    std::vector<double> sample_value(cfg.K), gap_value(cfg.K);
    for (int k = 0; k < cfg.K; ++k) {
        sample_value[k] = cfg.weights[k] * static_cast<double>(state.g[k]);
        gap_value[k] = cfg.weights[k] * static_cast<double>(state.h[k] - state.g[k]);
    }
    return Action{top_indices(sample_value, cfg.S), top_indices(gap_value, cfg.U)};
}

Action random_action(const ActionSpace &space, CounterRng &rng)
{
    return space.at(rng.below(space.size()));
}

Action random_action(const NetworkConfig &cfg, CounterRng &rng)
{
    return random_action(ActionSpace(cfg), rng);
}

Action decide(const PolicySpec &policy, const NetworkConfig &cfg, const ActionSpace &space,
              const AoIState &state, CounterRng &rng)
{
    switch (policy.kind) {
    case PolicyKind::greedy:
        return greedy_action(state, cfg);
    case PolicyKind::random:
        return random_action(space, rng);
    case PolicyKind::dp_optimal:
        if (!policy.dp)
            throw std::invalid_argument("dp_optimal policy has no table");
        return space.at(policy.dp->at(state).action);
    case PolicyKind::q_learned:
        if (!policy.q)
            throw std::invalid_argument("q_learned policy has no table");
        return space.at(policy.q->best_action(state));
    case PolicyKind::fixed_sequence:
        if (state.t < 1 || static_cast<std::size_t>(state.t) > policy.sequence.size())
            throw std::invalid_argument("fixed sequence has no action for slot " + std::to_string(state.t));
        return policy.sequence[state.t - 1];
    }
    throw std::logic_error("unhandled policy kind");
}

std::vector<std::pair<std::size_t, double>> action_distribution(const PolicySpec &policy,
                                                                const NetworkConfig &cfg,
                                                                const ActionSpace &space,
                                                                const AoIState &state)
{
    if (policy.kind == PolicyKind::random) {
        std::vector<std::pair<std::size_t, double>> all;
        all.reserve(space.size());
        const double pr = 1.0 / static_cast<double>(space.size());
        for (std::size_t i = 0; i < space.size(); ++i)
            all.emplace_back(i, pr);
        return all;
    }
    CounterRng unused(0);
    return {{space.index_of(decide(policy, cfg, space, state, unused)), 1.0}};
}

} // namespace aoi
