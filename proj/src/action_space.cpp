#include "aoi/action_space.hpp"

namespace aoi {

std::uint64_t binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

std::vector<std::vector<int>> combinations(int n, int k)
{
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n)
        return out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i)
        cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i)
            --i;
        if (i < 0)
            break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j)
            cur[j] = cur[j - 1] + 1;
    }
    return out;
}

ActionSpace::ActionSpace(const NetworkConfig &cfg)
    : sample_sets_(combinations(cfg.K, cfg.S)), update_sets_(combinations(cfg.K, cfg.U))
{
    for (std::size_t i = 0; i < sample_sets_.size(); ++i)
        sample_rank_.emplace(sample_sets_[i], i);
    for (std::size_t i = 0; i < update_sets_.size(); ++i)
        update_rank_.emplace(update_sets_[i], i);
}

Action ActionSpace::at(std::size_t index) const
{
    const std::size_t n_u = update_sets_.size();
    return Action{sample_sets_.at(index / n_u), update_sets_.at(index % n_u)};
}

std::size_t ActionSpace::index_of(const Action &action) const
{
    auto s = sample_rank_.find(action.sample);
    auto u = update_rank_.find(action.update);
    if (s == sample_rank_.end() || u == update_rank_.end())
        throw InfeasibleAction("action " + format_action(action) + " is not in the action space");
    return s->second * update_sets_.size() + u->second;
}

std::vector<Action> feasible_actions(const NetworkConfig &cfg)
{
    ActionSpace space(cfg);
    std::vector<Action> all;
    all.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
        all.push_back(space.at(i));
    return all;
}

} // namespace aoi
