#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "aoi/qlearning.hpp"
#include "aoi/sim.hpp"

namespace aoi {

// All CSV text uses a header row, LF line endings and format_double numbers.

// policy,t,mean_weighted_sum_h,mean_weighted_sum_g,n_runs,seed
std::string summary_csv(std::span<const RunSummary> summaries);

// run,t,k,g_k,h_k,sampled,updated,sample_outage,update_outage
// Runs are numbered by position in the span; k is 1-based. The outage columns
// are 1 only for a selected index whose transmission failed.
std::string trajectory_csv(std::span<const Trajectory> runs);

// policy,window,mean_average_weighted_sum_h,n_runs,seed
// Mean of (1/W) sum_{t<=W} sum_k w_k h_k(t) for every window W = 1..T.
std::string window_average_csv(std::span<const RunSummary> summaries);

// episode,value
std::string curve_csv(std::span<const CurvePoint> curve);

// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string &text);

struct Artifact {
    std::filesystem::path path;
    std::string content;
};

// Writes content to a temporary file next to path and renames it into place,
// so a reader never sees a partial file. Parent directories are created.
void write_atomically(const std::filesystem::path &path, const std::string &content);

// Writes every artifact atomically, in order.
void commit(std::span<const Artifact> artifacts);

} // namespace aoi
