#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "aoi/dynamics.hpp"

namespace aoi {

std::uint64_t binomial(int n, int k);

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k);

// Canonical enumeration of the C(K,S) * C(K,U) feasible actions: lexicographic
// by sample set, then by update set. Action index = sample_rank * C(K,U) +
// update_rank.
class ActionSpace {
  public:
    explicit ActionSpace(const NetworkConfig &cfg);

    std::size_t size() const { return sample_sets_.size() * update_sets_.size(); }
    std::size_t sample_set_count() const { return sample_sets_.size(); }
    std::size_t update_set_count() const { return update_sets_.size(); }

    Action at(std::size_t index) const;
    std::size_t index_of(const Action &action) const;
    const std::vector<int> &sample_set(std::size_t rank) const { return sample_sets_.at(rank); }

  private:
    std::vector<std::vector<int>> sample_sets_;
    std::vector<std::vector<int>> update_sets_;
    std::map<std::vector<int>, std::size_t> sample_rank_;
    std::map<std::vector<int>, std::size_t> update_rank_;
};

std::vector<Action> feasible_actions(const NetworkConfig &cfg);

} // namespace aoi
