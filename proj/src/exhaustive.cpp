#include "aoi/exhaustive.hpp"

#include <limits>

namespace aoi {

namespace {

std::uint64_t saturating_pow(std::uint64_t base, int exp)
{
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            return std::numeric_limits<std::uint64_t>::max();
        r *= base;
    }
    return r;
}

void require_errorless(const NetworkConfig &cfg)
{
    cfg.validate();
    if (!cfg.errorless())
        throw std::invalid_argument("fixed-sequence evaluation requires an errorless instance (all p = q = 0)");
}

struct Search {
    const NetworkConfig &cfg;
    const std::vector<Action> &actions;
    OutageDraws clean;
    SearchResult result;
    std::vector<Action> path;
    bool have_best = false;

    void visit(const AoIState &state, double cost, Age age)
    {
        cost += weighted_sum(state, cfg.weights, Node::destination);
        age += total_age(state, Node::destination);
        if (state.t == cfg.T) {
            if (!have_best || cost < result.min_cost) {
                result.min_cost = cost;
                result.argmin = path;
                result.argmin.push_back(actions.front());
            }
            if (!have_best || age < result.min_total_age)
                result.min_total_age = age;
            have_best = true;
            return;
        }
        for (const auto &a : actions) {
            path.push_back(a);
            visit(step(cfg, state, a, clean), cost, age);
            path.pop_back();
        }
    }
};

} // namespace

SequenceEvaluation evaluate_fixed_sequence(const NetworkConfig &cfg, std::span<const Action> actions)
{
    require_errorless(cfg);
    if (static_cast<int>(actions.size()) != cfg.T)
        throw std::invalid_argument("fixed sequence has " + std::to_string(actions.size()) +
                                    " actions, expected T=" + std::to_string(cfg.T));
    const auto clean = OutageDraws::none(cfg.S, cfg.U);
    SequenceEvaluation ev;
    AoIState state = initial_state(cfg);
    for (int t = 1; t <= cfg.T; ++t) {
        const Action &a = actions[t - 1];
        check_feasible(cfg, a);
        ev.total_cost += weighted_sum(state, cfg.weights, Node::destination);
        ev.total_age += total_age(state, Node::destination);
        ev.sum_g.push_back(total_age(state, Node::relay));
        ev.sum_h.push_back(total_age(state, Node::destination));
        ev.r_sample.push_back(sampling_reduction(state, a.sample));
        ev.r_update.push_back(update_reduction(state, a.update));
        if (t < cfg.T)
            state = step(cfg, state, a, clean);
    }
    return ev;
}

SearchResult exhaustive_min_cost(const NetworkConfig &cfg, std::uint64_t budget)
{
    require_errorless(cfg);
    const auto actions = feasible_actions(cfg);
    const std::uint64_t count = saturating_pow(actions.size(), cfg.T);
    if (count > budget)
        throw BudgetExceeded("exhaustive search needs " + std::to_string(actions.size()) + "^" +
                             std::to_string(cfg.T) + " sequences, above the budget of " + std::to_string(budget));
    // The slot-T action never affects cost, so the walk stops at slot T and
    // every leaf stands for |A| sequences.
    Search search{cfg, actions, OutageDraws::none(cfg.S, cfg.U), {}, {}};
    search.visit(initial_state(cfg), 0.0, 0);
    search.result.sequences = count;
    return search.result;
}

} // namespace aoi
