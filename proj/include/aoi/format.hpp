#pragma once

#include <iosfwd>
#include <string>

#include "aoi/network.hpp"

namespace aoi {

// Shortest decimal text that parses back to the same double. Locale
// independent, so CSV output is byte-stable.
std::string format_double(double value);

// Instance block shared by the table file formats:
//   instance K S U T
//   weights w_1 .. w_K
//   p p_1 .. p_K
//   q q_1 .. q_K
void write_instance(std::ostream &out, const NetworkConfig &cfg);
NetworkConfig read_instance(std::istream &in);

} // namespace aoi
