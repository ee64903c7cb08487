#include "aoi/dp.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "aoi/format.hpp"

namespace aoi {

DPTable::DPTable(NetworkConfig cfg, std::vector<Slot> slots) : config_(std::move(cfg)), slots_(std::move(slots)) {}

double DPTable::root_cost() const
{
    return at(initial_state(config_)).cost_to_go;
}

double DPTable::optimal_value() const
{
    return root_cost() / static_cast<double>(config_.T);
}

const DPEntry &DPTable::at(const AoIState &state) const
{
    if (state.t < 1 || static_cast<std::size_t>(state.t) > slots_.size())
        throw std::out_of_range("DP table has no slot " + std::to_string(state.t));
    const auto &slot = slots_[state.t - 1];
    auto it = slot.find(make_key(state));
    if (it == slot.end())
        throw std::out_of_range("state not reachable at slot " + std::to_string(state.t));
    return it->second;
}

std::size_t DPTable::state_count() const
{
    std::size_t n = 0;
    for (const auto &s : slots_)
        n += s.size();
    return n;
}

void DPTable::save(std::ostream &out) const
{
    out << "# aoi dp table v1: t g_1..g_K h_1..h_K action_index cost_to_go\n";
    write_instance(out, config_);
    for (std::size_t t = 0; t < slots_.size(); ++t) {
        // Sorted by key so files are byte-stable across runs.
        std::vector<std::pair<const StateKey *, const DPEntry *>> rows;
        rows.reserve(slots_[t].size());
        for (const auto &[key, entry] : slots_[t])
            rows.emplace_back(&key, &entry);
        std::sort(rows.begin(), rows.end(),
                  [](const auto &a, const auto &b) { return a.first->values < b.first->values; });
        for (const auto &[key, entry] : rows) {
            out << t + 1;
            for (Age v : key->values)
                out << ' ' << v;
            out << ' ' << entry->action << ' ' << format_double(entry->cost_to_go) << '\n';
        }
    }
}

DPTable DPTable::load(std::istream &in)
{
    NetworkConfig cfg = read_instance(in);
    std::vector<Slot> slots(cfg.T);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream fields(line);
        Age t = 0;
        StateKey key;
        key.values.resize(2 * cfg.K);
        DPEntry entry;
        fields >> t;
        for (auto &v : key.values)
            fields >> v;
        std::string cost;
        fields >> entry.action >> cost;
        if (!fields || t < 1 || t > cfg.T)
            throw std::runtime_error("malformed DP table line: " + line);
        entry.cost_to_go = std::stod(cost);
        slots[t - 1].emplace(std::move(key), entry);
    }
    return DPTable(std::move(cfg), std::move(slots));
}

DPTable solve_backward_induction(const NetworkConfig &cfg, std::size_t state_cap)
{
    cfg.validate();
    const ActionSpace space(cfg);
    std::vector<Action> actions;
    std::vector<std::vector<Outcome>> outcomes;
    for (std::size_t a = 0; a < space.size(); ++a) {
        actions.push_back(space.at(a));
        outcomes.push_back(outage_outcomes(cfg, actions.back()));
    }

    // Forward expansion of the reachable set, layer by layer.
    std::vector<std::vector<AoIState>> layers(cfg.T);
    std::vector<DPTable::Slot> slots(cfg.T);
    layers[0].push_back(initial_state(cfg));
    slots[0].emplace(make_key(layers[0][0]), DPEntry{});
    std::size_t total = 1;
    for (int t = 1; t < cfg.T; ++t) {
        for (const auto &state : layers[t - 1]) {
            for (std::size_t a = 0; a < actions.size(); ++a) {
                for (const auto &o : outcomes[a]) {
                    AoIState next = step(cfg, state, actions[a], o.draws);
                    if (slots[t].emplace(make_key(next), DPEntry{}).second) {
                        layers[t].push_back(std::move(next));
                        if (++total > state_cap)
                            throw BudgetExceeded("DP reachable state count exceeds cap of " +
                                                 std::to_string(state_cap) + " states");
                    }
                }
            }
        }
    }

    for (const auto &state : layers[cfg.T - 1])
        slots[cfg.T - 1].at(make_key(state)).cost_to_go = weighted_sum(state, cfg.weights, Node::destination);

    for (int t = cfg.T - 2; t >= 0; --t) {
        for (const auto &state : layers[t]) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_action = 0;
            for (std::size_t a = 0; a < actions.size(); ++a) {
                double expected = 0.0;
                for (const auto &o : outcomes[a])
                    expected += o.probability *
                                slots[t + 1].at(make_key(step(cfg, state, actions[a], o.draws))).cost_to_go;
                // Strictly better beyond rounding noise, so ties keep the lower index.
                if (a == 0 || expected < best - 1e-12 * std::max(1.0, std::abs(best))) {
                    best = expected;
                    best_action = a;
                }
            }
            auto &entry = slots[t].at(make_key(state));
            entry.cost_to_go = weighted_sum(state, cfg.weights, Node::destination) + best;
            entry.action = best_action;
        }
    }
    return DPTable(cfg, std::move(slots));
}

} // namespace aoi
