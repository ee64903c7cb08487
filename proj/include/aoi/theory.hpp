#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aoi/sim.hpp"

namespace aoi {

// Minimum sum of relay ages at slot t in an errorless symmetric network.
// Equals tK - sum_{tau<t} min{tau S, K}; constant for t >= ceil(K/S).
Age min_sum_g(int K, int S, Age t);
// Minimum sum of destination ages; equals tK - sum_{tau<t} min{(tau-1)U, K}
// and is constant for t >= ceil(K/U) + 1.
Age min_sum_h(int K, int U, Age t);

// The same quantities by direct accumulation of the greedy reductions.
Age accumulated_min_sum_g(int K, int S, Age t);
Age accumulated_min_sum_h(int K, int U, Age t);

// The indicator expressions exactly as usually printed. They only agree with
// the true minimum from t = ceil(K/S) (resp. ceil(K/U) + 1) onwards.
Age printed_min_sum_g(int K, int S, Age t);
Age printed_min_sum_h(int K, int U, Age t);

// Greedy reductions (min{tS, K}, min{(t-1)U, K}).
std::pair<Age, Age> greedy_reduction_formulas(int K, int S, int U, Age t);

struct Violation {
    Age t = 0;
    int k = -1; // -1 for sum-level checks; 0-based otherwise
    double lhs = 0.0;
    double rhs = 0.0;
};

enum class Verdict { pass, fail, note };

struct CheckReport {
    std::string check;
    std::string instance;
    Verdict verdict = Verdict::pass;
    std::optional<Violation> violation;
    std::string detail;

    bool passed() const { return verdict != Verdict::fail; }
    // "check<TAB>instance<TAB>verdict<TAB>t=..,k=..,lhs=..,rhs=.. or ->"
    std::string to_line() const;
};

// h_k(t) >= g_k(t-1) + 1 and h_k(t) >= g_k(t) for every k and t >= 2.
CheckReport check_destination_bound(const Trajectory &trajectory);
// sum_k g_k(t) = tK - sum_{tau<t} R_S(tau), and the same for h with R_U.
// Throws std::invalid_argument for trajectories of error-prone instances.
CheckReport check_age_sum_identity(const Trajectory &trajectory);
// sum_{tau<=t-1} R_S(tau) >= sum_{tau<=t} R_U(tau) for every t.
CheckReport check_reduction_order(const Trajectory &trajectory);
// Equality version of the above at every t.
CheckReport check_reduction_balance(const Trajectory &trajectory);
// Greedy R_S(t), R_U(t) against min{tS,K}, min{(t-1)U,K}.
CheckReport check_greedy_reductions(const Trajectory &trajectory);

// max over sampling sequences of sum_{t=1..T} sum_{tau<=t-2} R_S(tau) on an
// errorless instance. Only slots 1..T-2 matter, so C(K,S)^(T-2) sequences are
// searched. Throws BudgetExceeded above the budget.
struct SamplingSearch {
    Age best = 0;
    std::uint64_t sequences = 0;
};
SamplingSearch max_double_accumulated_sampling(const NetworkConfig &cfg, std::uint64_t budget);
Age double_accumulated_sampling(const Trajectory &trajectory);

// Passes iff the trajectory attains the exhaustive maximum of the double
// accumulated sampling reduction and satisfies the equality condition.
CheckReport check_optimality_condition(const NetworkConfig &cfg, const Trajectory &trajectory,
                                      std::uint64_t search_budget);

// Greedy's total age equals the exhaustive minimum.
CheckReport check_greedy_vs_exhaustive(const NetworkConfig &cfg, std::uint64_t search_budget);

// Greedy's exact expected value equals the DP optimum within tol.
CheckReport check_greedy_vs_dp(const NetworkConfig &cfg, double tol = 1e-12);

// Greedy simulation against min_sum_g / min_sum_h for t <= horizon.
CheckReport check_closed_forms(int K, int S, int U, Age horizon);

// One note per slot where the printed expressions differ from the true value.
std::vector<CheckReport> printed_form_notes(int K, int S, int U, Age horizon);

} // namespace aoi
