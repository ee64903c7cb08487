#pragma once

#include <cstddef>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "aoi/action_space.hpp"

namespace aoi {

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

struct DPEntry {
    // Minimal expected sum over slots t..T of sum_k w_k h_k.
    double cost_to_go = 0.0;
    std::size_t action = 0;
};

// Finite-horizon optimal policy over the forward-reachable state set.
class DPTable {
  public:
    using Slot = std::unordered_map<StateKey, DPEntry, StateKeyHash>;

    DPTable() = default;
    DPTable(NetworkConfig cfg, std::vector<Slot> slots);

    const NetworkConfig &config() const { return config_; }
    // Expected total cost from the initial state.
    double root_cost() const;
    // root_cost() / T, the optimal average weighted sum AoI.
    double optimal_value() const;

    // Throws std::out_of_range for states that were not reachable.
    const DPEntry &at(const AoIState &state) const;
    std::size_t state_count() const;
    const std::vector<Slot> &slots() const { return slots_; }

    // Header line with the instance, then one line per state:
    // "t g_1..g_K h_1..h_K action_index cost_to_go".
    void save(std::ostream &out) const;
    static DPTable load(std::istream &in);

  private:
    NetworkConfig config_;
    std::vector<Slot> slots_; // slots_[t-1]
};

// Expands reachable states from the initial state, then runs backward
// induction with exact expectations over outage patterns. Ties between actions
// resolve to the lower canonical index.
DPTable solve_backward_induction(const NetworkConfig &cfg, std::size_t state_cap = kDefaultStateCap);

} // namespace aoi
