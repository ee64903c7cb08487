#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace aoi {

// Ages are slot counts; 64 bits covers any horizon we can simulate.
using Age = std::int64_t;

class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class InfeasibleAction : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Raised by the exact oracles (DP, exhaustive search, path enumeration) when an
// instance is larger than the configured cap.
class BudgetExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Static problem instance: K sensor/destination pairs, per-slot sampling and
// updating budgets S and U, horizon T, process weights and link outage
// probabilities (p: sensor -> relay, q: relay -> destination).
struct NetworkConfig {
    int K = 0;
    int S = 0;
    int U = 0;
    int T = 0;
    std::vector<double> weights;
    std::vector<double> p;
    std::vector<double> q;

    // Uniform weights 1/K and identical outage probabilities.
    static NetworkConfig symmetric(int K, int S, int U, int T, double p = 0.0, double q = 0.0);

    // Throws DomainError naming the first violated constraint.
    void validate() const;

    bool errorless() const;
    bool uniform_weights() const;
    // Uniform weights with identical p_k and identical q_k.
    bool symmetric_instance() const;

    std::string describe() const;

    friend bool operator==(const NetworkConfig &, const NetworkConfig &) = default;
};

} // namespace aoi
