#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aoi/policy.hpp"

namespace aoi {

inline constexpr std::uint64_t kDefaultPathCap = std::uint64_t{1} << 24;

enum class Channel : std::uint64_t { sampling = 0, updating = 1, policy = 2 };

// Variate for (seed, run, slot t, channel, rank i). This is the only source of
// outage randomness, so every policy reading the same coordinates sees the
// same number.
double tape_variate(std::uint64_t master_seed, std::uint64_t run, Age t, Channel channel, int slot);

// Uniform variates for slots 1..T, S sampling ranks and U updating ranks per
// slot. A transmission at rank i of a slot is in outage when the variate is
// below that link's outage probability.
class OutageTape {
  public:
    static OutageTape derive(std::uint64_t master_seed, std::uint64_t run, int T, int S, int U);
    // Explicit variates, indexed [t-1][rank].
    static OutageTape from_variates(std::vector<std::vector<double>> sample,
                                    std::vector<std::vector<double>> update, std::uint64_t master_seed = 0,
                                    std::uint64_t run = 0);

    int horizon() const { return static_cast<int>(sample_.size()); }
    std::uint64_t master_seed() const { return seed_; }
    std::uint64_t run() const { return run_; }

    std::span<const double> sample_variates(Age t) const;
    std::span<const double> update_variates(Age t) const;
    OutageDraws draws(const NetworkConfig &cfg, const Action &action, Age t) const;

  private:
    std::uint64_t seed_ = 0;
    std::uint64_t run_ = 0;
    std::vector<std::vector<double>> sample_;
    std::vector<std::vector<double>> update_;
};

struct SlotRecord {
    AoIState state;
    Action action;
    OutageDraws outage;
    // Variates read at this slot, kept so couplings can be audited.
    std::vector<double> sample_variates;
    std::vector<double> update_variates;
    Age r_sample = 0;
    Age r_update = 0;
    double weighted_sum_g = 0.0;
    double weighted_sum_h = 0.0;
};

// Slots 1..T. The policy also acts at slot T so that reduction sequences are
// defined over the whole horizon; the slot-T action has no effect on cost.
struct Trajectory {
    NetworkConfig config;
    std::string policy;
    std::vector<SlotRecord> slots;

    // (1/T) sum_t sum_k w_k h_k(t)
    double average_cost() const;
};

// Throws InfeasibleAction if the policy emits an infeasible action and
// std::invalid_argument if the tape is shorter than T.
Trajectory run_episode(const NetworkConfig &cfg, const PolicySpec &policy, const OutageTape &tape);

struct RunSummary {
    std::string policy;
    std::uint64_t n_runs = 0;
    std::uint64_t master_seed = 0;
    std::vector<double> mean_weighted_sum_h; // index t-1
    std::vector<double> mean_weighted_sum_g;
    double mean_value = 0.0;  // mean over runs of the per-run average cost
    double std_dev = 0.0;     // sample standard deviation of per-run averages
    double std_error = 0.0;
    double half_width = 0.0;  // 1.96 standard errors
};

// Independent runs with tapes derived from (master_seed, run). Aggregation is
// in run order.
RunSummary run_monte_carlo(const NetworkConfig &cfg, const PolicySpec &policy, std::uint64_t n_runs,
                           std::uint64_t master_seed);

struct CoupledResult {
    std::vector<RunSummary> summaries;
    // [run][policy][t-1] = sum_k h_k(t)
    std::vector<std::vector<std::vector<Age>>> sum_h;
    // [run][policy] = V_policy - V_reference for that run
    std::vector<std::vector<double>> paired_difference;
    std::size_t reference = 0;
    std::vector<std::string> warnings;

    // Number of (run, t) pairs where the policy's sum_k h_k(t) is below the
    // reference's.
    std::uint64_t dominance_violations(std::size_t policy) const;
};

// Every policy reads the same tape in each run. Asymmetric instances still run
// but carry a warning: positional coupling no longer preserves per-sensor
// marginals there.
CoupledResult run_coupled(const NetworkConfig &cfg, std::span<const PolicySpec> policies,
                          std::uint64_t master_seed, std::uint64_t n_runs, std::size_t reference = 0);

// Exact V(T) by enumerating every action and outage branch with its
// probability. Throws BudgetExceeded when the branch count exceeds path_cap.
double exact_expected_value(const NetworkConfig &cfg, const PolicySpec &policy,
                            std::uint64_t path_cap = kDefaultPathCap);

} // namespace aoi
