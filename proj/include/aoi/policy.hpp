#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "aoi/action_space.hpp"
#include "aoi/rng.hpp"

namespace aoi {

class DPTable;
class QTable;

enum class PolicyKind { greedy, random, dp_optimal, q_learned, fixed_sequence };

std::string to_string(PolicyKind kind);
// Accepts "greedy", "random", "dp_optimal", "q_learned", "fixed_sequence".
PolicyKind parse_policy_kind(const std::string &name);

struct PolicySpec {
    PolicyKind kind = PolicyKind::greedy;
    // Separates the action streams of several random policies in one run.
    std::uint64_t stream_id = 0;
    std::shared_ptr<const DPTable> dp;
    std::shared_ptr<const QTable> q;
    std::vector<Action> sequence;

    static PolicySpec greedy();
    static PolicySpec random(std::uint64_t stream_id = 0);
    static PolicySpec dp_optimal(std::shared_ptr<const DPTable> table);
    static PolicySpec q_learned(std::shared_ptr<const QTable> table);
    static PolicySpec fixed_sequence(std::vector<Action> actions);

    std::string name() const { return to_string(kind); }
};

// Indices of the n largest values; ties go to the lower index. Result sorted.
std::vector<int> top_indices(std::span<const double> values, int n);

// Samples the S largest w_k g_k and updates the U largest w_k (h_k - g_k).
Action greedy_action(const AoIState &state, const NetworkConfig &cfg);

// Uniform over the canonical action list; consumes draws from rng.
Action random_action(const ActionSpace &space, CounterRng &rng);
Action random_action(const NetworkConfig &cfg, CounterRng &rng);

// The action the policy takes in this state. Learned tables are queried
// without exploration. rng is only consumed by the random policy.
Action decide(const PolicySpec &policy, const NetworkConfig &cfg, const ActionSpace &space,
              const AoIState &state, CounterRng &rng);

// Exact action distribution as (action index, probability) pairs.
std::vector<std::pair<std::size_t, double>> action_distribution(const PolicySpec &policy,
                                                                const NetworkConfig &cfg,
                                                                const ActionSpace &space,
                                                                const AoIState &state);

} // namespace aoi
