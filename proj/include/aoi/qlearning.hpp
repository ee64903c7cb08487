#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "aoi/action_space.hpp"
#include "aoi/rng.hpp"

namespace aoi {

struct QHyperparameters {
    int clip_cap = 12;
    double alpha = 0.05;
    // Step size max(alpha, 1/n) on the n-th update of a pair, so the first
    // update replaces the initial value outright.
    bool visit_count_rate = true;
    // Value of every action in a newly stored state. A mildly pessimistic
    // start stops untried actions from looking better than tried ones.
    double initial_value = -1.0;
    double epsilon = 0.5;
    // Exploration decays linearly from epsilon to epsilon_final over training.
    // Unset means constant epsilon.
    std::optional<double> epsilon_final = 0.0;
    std::uint64_t episodes = 50'000;
    // Include the slot index (clipped to clip_cap) in the state key.
    bool time_indexed = true;
    // Training curve sampling; 0 disables the curve.
    std::uint64_t eval_interval = 0;
    std::uint64_t eval_runs = 100;

    // Default clip cap min(T, 12).
    static QHyperparameters defaults_for(const NetworkConfig &cfg);
    // Coarser state for the K=5, T=20 experiments: no slot index and a clip
    // cap of 4 keep the table small enough to learn in 200k episodes.
    static QHyperparameters large_instance();
    void validate() const;
};

// Action values over clipped states. Unvisited states read as initial_value.
class QTable {
  public:
    QTable() = default;
    QTable(NetworkConfig cfg, QHyperparameters hyper);

    const NetworkConfig &config() const { return config_; }
    const QHyperparameters &hyper() const { return hyper_; }
    std::size_t action_count() const { return action_count_; }

    StateKey key(const AoIState &state) const;
    // nullptr when the clipped state was never stored.
    const std::vector<double> *values(const AoIState &state) const;
    std::vector<double> &values_mut(const AoIState &state);
    // Update counts of the state's actions; empty for unvisited states.
    std::vector<std::uint32_t> &counts_mut(const AoIState &state);
    double max_value(const AoIState &state) const;
    // Argmax with ties to the lowest canonical index.
    std::size_t best_action(const AoIState &state) const;

    std::size_t state_count() const { return table_.size(); }
    const std::unordered_map<StateKey, std::vector<double>, StateKeyHash> &entries() const { return table_; }

    // Header lines with instance and hyperparameters, then one line per
    // (state, action): "key_1..key_n action_index value".
    void save(std::ostream &out) const;
    static QTable load(std::istream &in);

  private:
    NetworkConfig config_;
    QHyperparameters hyper_;
    std::size_t action_count_ = 0;
    std::unordered_map<StateKey, std::vector<double>, StateKeyHash> table_;
    std::unordered_map<StateKey, std::vector<std::uint32_t>, StateKeyHash> counts_;
};

struct CurvePoint {
    std::uint64_t episode = 0;
    double value = 0.0; // Monte Carlo V of the greedy-in-table policy
};

struct QTrainingResult {
    QTable table;
    std::vector<CurvePoint> curve;
};

// Episodic epsilon-greedy Q-learning, discount 1, per-step reward
// -sum_k w_k h_k(t+1) / T. Outages come from a tape keyed by (seed, episode).
QTrainingResult train_q_learning(const NetworkConfig &cfg, const QHyperparameters &hyper,
                                 std::uint64_t seed);

// With probability epsilon a uniform action (epsilon >= 1 skips the coin and
// draws exactly like random_action), otherwise the table argmax.
Action q_action(const QTable &table, const ActionSpace &space, const AoIState &state, double epsilon,
                CounterRng &rng);

} // namespace aoi
