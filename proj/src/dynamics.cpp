#include "aoi/dynamics.hpp"

#include <algorithm>
#include <sstream>

namespace aoi {

Action Action::make(std::vector<int> sample, std::vector<int> update)
{
    std::sort(sample.begin(), sample.end());
    std::sort(update.begin(), update.end());
    return Action{std::move(sample), std::move(update)};
}

OutageDraws OutageDraws::none(int S, int U)
{
    return OutageDraws{std::vector<bool>(S, false), std::vector<bool>(U, false)};
}

AoIState initial_state(const NetworkConfig &cfg)
{
    return AoIState{1, std::vector<Age>(cfg.K, 1), std::vector<Age>(cfg.K, 1)};
}

namespace {

void check_set(const std::vector<int> &set, int K, int expected, const char *name, const char *budget)
{
    if (static_cast<int>(set.size()) != expected)
        throw InfeasibleAction(std::string(name) + " set has " + std::to_string(set.size()) +
                               " elements, expected " + budget + "=" + std::to_string(expected));
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set[i] < 0 || set[i] >= K)
            throw InfeasibleAction(std::string(name) + " index " + std::to_string(set[i] + 1) +
                                   " outside 1.." + std::to_string(K));
        if (i > 0 && set[i] <= set[i - 1])
            throw InfeasibleAction(std::string(name) + " set must be strictly increasing (duplicate or unsorted index " +
                                   std::to_string(set[i] + 1) + ")");
    }
}

void check_indices(const AoIState &state, std::span<const int> set)
{
    for (int k : set)
        if (k < 0 || static_cast<std::size_t>(k) >= state.g.size())
            throw InfeasibleAction("index " + std::to_string(k + 1) + " outside 1.." +
                                   std::to_string(state.g.size()));
}

} // namespace

void check_feasible(const NetworkConfig &cfg, const Action &action)
{
    check_set(action.sample, cfg.K, cfg.S, "sample", "S");
    check_set(action.update, cfg.K, cfg.U, "update", "U");
}

AoIState step(const NetworkConfig &cfg, const AoIState &state, const Action &action,
              const OutageDraws &outage)
{
    check_feasible(cfg, action);
    if (state.t > cfg.T)
        throw std::invalid_argument("step called at t=" + std::to_string(state.t) + " beyond horizon T=" +
                                    std::to_string(cfg.T));
    if (outage.sample.size() != action.sample.size() || outage.update.size() != action.update.size())
        throw std::invalid_argument("outage draws do not match action cardinalities");

    AoIState next{state.t + 1, state.g, state.h};
    for (auto &x : next.g)
        ++x;
    for (auto &x : next.h)
        ++x;
    for (std::size_t i = 0; i < action.sample.size(); ++i)
        if (!outage.sample[i])
            next.g[action.sample[i]] = 1;
    for (std::size_t i = 0; i < action.update.size(); ++i)
        if (!outage.update[i])
            next.h[action.update[i]] = state.g[action.update[i]] + 1;
    return next;
}

Age sampling_reduction(const AoIState &state, std::span<const int> sample_set)
{
    check_indices(state, sample_set);
    Age sum = 0;
    for (int k : sample_set)
        sum += state.g[k];
    return sum;
}

Age update_reduction(const AoIState &state, std::span<const int> update_set)
{
    check_indices(state, update_set);
    Age sum = 0;
    for (int k : update_set)
        sum += state.h[k] - state.g[k];
    return sum;
}

double weighted_sum(const AoIState &state, std::span<const double> weights, Node which)
{
    const auto &ages = which == Node::relay ? state.g : state.h;
    if (weights.size() != ages.size())
        throw std::invalid_argument("weights length does not match K");
    double sum = 0.0;
    for (std::size_t k = 0; k < ages.size(); ++k)
        sum += weights[k] * static_cast<double>(ages[k]);
    return sum;
}

Age total_age(const AoIState &state, Node which)
{
    const auto &ages = which == Node::relay ? state.g : state.h;
    Age sum = 0;
    for (Age a : ages)
        sum += a;
    return sum;
}

std::vector<Outcome> outage_outcomes(const NetworkConfig &cfg, const Action &action)
{
    // Per rank: the outage probability of the link it refers to.
    std::vector<double> probs;
    probs.reserve(action.sample.size() + action.update.size());
    for (int k : action.sample)
        probs.push_back(cfg.p[k]);
    for (int k : action.update)
        probs.push_back(cfg.q[k]);

    std::vector<Outcome> out{Outcome{OutageDraws{}, 1.0}};
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const bool is_sample = i < action.sample.size();
        std::vector<Outcome> grown;
        grown.reserve(out.size() * 2);
        for (const auto &o : out) {
            for (bool fail : {false, true}) {
                const double pr = fail ? probs[i] : 1.0 - probs[i];
                if (pr == 0.0)
                    continue;
                Outcome n = o;
                (is_sample ? n.draws.sample : n.draws.update).push_back(fail);
                n.probability *= pr;
                grown.push_back(std::move(n));
            }
        }
        out = std::move(grown);
    }
    return out;
}

std::string format_set(std::span<const int> set)
{
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < set.size(); ++i)
        out << (i ? "," : "") << set[i] + 1;
    out << '}';
    return out.str();
}

std::string format_action(const Action &action)
{
    return "S=" + format_set(action.sample) + " U=" + format_set(action.update);
}

std::size_t StateKeyHash::operator()(const StateKey &key) const noexcept
{
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Age v : key.values) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

StateKey make_key(const AoIState &state)
{
    StateKey key;
    key.values.reserve(state.g.size() * 2);
    key.values.insert(key.values.end(), state.g.begin(), state.g.end());
    key.values.insert(key.values.end(), state.h.begin(), state.h.end());
    return key;
}

} // namespace aoi
