#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "aoi/network.hpp"

namespace aoi {

// AoI vectors at slot t. g is the age held by the relay, h the age held by the
// destination. Process indices are 0-based internally and printed 1-based.
struct AoIState {
    Age t = 1;
    std::vector<Age> g;
    std::vector<Age> h;

    friend bool operator==(const AoIState &, const AoIState &) = default;
};

// One slot's joint decision. Both sets are kept sorted ascending; the rank of
// an index inside its set is what outage draws attach to.
struct Action {
    std::vector<int> sample;
    std::vector<int> update;

    // Sorts both sets. Feasibility is checked separately.
    static Action make(std::vector<int> sample, std::vector<int> update);

    friend bool operator==(const Action &, const Action &) = default;
    friend auto operator<=>(const Action &, const Action &) = default;
};

// Realized outages for one slot (true = outage), indexed by rank within the
// sorted sample / update sets.
struct OutageDraws {
    std::vector<bool> sample;
    std::vector<bool> update;

    static OutageDraws none(int S, int U);
};

// An outage pattern together with its exact probability under the instance.
struct Outcome {
    OutageDraws draws;
    double probability = 1.0;
};

enum class Node { relay, destination };

AoIState initial_state(const NetworkConfig &cfg);

// Throws InfeasibleAction naming the violated constraint.
void check_feasible(const NetworkConfig &cfg, const Action &action);

// One slot of the AoI recursion. Every update uses the relay age from the
// start of the slot, so a process sampled and updated in the same slot
// delivers g_k(t) + 1.
AoIState step(const NetworkConfig &cfg, const AoIState &state, const Action &action,
              const OutageDraws &outage);

// Sum of relay ages over the set.
Age sampling_reduction(const AoIState &state, std::span<const int> sample_set);
// Sum of destination-relay age gaps over the set.
Age update_reduction(const AoIState &state, std::span<const int> update_set);

double weighted_sum(const AoIState &state, std::span<const double> weights, Node which);
Age total_age(const AoIState &state, Node which);

// All outage patterns of the action with nonzero probability, in a fixed
// order (sample ranks first, then update ranks, false before true).
std::vector<Outcome> outage_outcomes(const NetworkConfig &cfg, const Action &action);

// "{1,4,5}" with 1-based indices.
std::string format_set(std::span<const int> set);
std::string format_action(const Action &action);

// Hashable concatenation of (g, h), used by the DP and Q tables.
struct StateKey {
    std::vector<Age> values;

    friend bool operator==(const StateKey &, const StateKey &) = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey &key) const noexcept;
};

StateKey make_key(const AoIState &state);

} // namespace aoi
