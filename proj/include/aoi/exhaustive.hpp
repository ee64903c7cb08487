#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aoi/action_space.hpp"

namespace aoi {

inline constexpr std::uint64_t kDefaultSearchBudget = 100'000;

// Deterministic rollout of a fixed action list on an errorless instance.
struct SequenceEvaluation {
    double total_cost = 0.0;      // sum_t sum_k w_k h_k(t)
    Age total_age = 0;            // sum_t sum_k h_k(t)
    std::vector<Age> sum_g;       // per slot
    std::vector<Age> sum_h;       // per slot
    std::vector<Age> r_sample;    // per slot
    std::vector<Age> r_update;    // per slot
};

// Rejects instances with any nonzero outage probability and lists whose length
// is not T.
SequenceEvaluation evaluate_fixed_sequence(const NetworkConfig &cfg, std::span<const Action> actions);

struct SearchResult {
    double min_cost = 0.0;          // weighted
    Age min_total_age = 0;          // unweighted, minimized independently
    std::vector<Action> argmin;     // a sequence attaining min_cost
    std::uint64_t sequences = 0;
};

// Minimum over all (C(K,S) C(K,U))^T action sequences of an errorless
// instance. Throws BudgetExceeded when that count is above the budget.
SearchResult exhaustive_min_cost(const NetworkConfig &cfg, std::uint64_t budget = kDefaultSearchBudget);

} // namespace aoi
