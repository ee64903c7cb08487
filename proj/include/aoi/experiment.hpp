#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aoi/policy.hpp"

namespace aoi {

class ConfigError : public std::runtime_error {
  public:
    ConfigError(int line, const std::string &message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
    {
    }
    int line() const { return line_; }

  private:
    int line_;
};

struct ExperimentConfig {
    NetworkConfig network;
    std::vector<PolicyKind> policies{PolicyKind::greedy};
    std::uint64_t n_runs = 1;
    std::uint64_t seed = 1;
    bool coupled = false;
    std::string out;
    std::string preset;

    friend bool operator==(const ExperimentConfig &, const ExperimentConfig &) = default;
};

// "key=value" pairs separated by whitespace or newlines; spaces around '=' are
// allowed and '#' starts a comment. Keys: K S U T weights p q policies n_runs
// seed coupled out preset. K, S, U and T are required. weights is "uniform" or
// a K-list; p and q are a scalar (broadcast) or a K-list.
ExperimentConfig parse_config(std::string_view text);

// One key per line, in a form parse_config reads back to an equal config.
std::string render_config(const ExperimentConfig &config);

} // namespace aoi
