#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace aoi {

// Identifier of the mixing construction below; written into output metadata so
// that emitted numbers can be traced to the generator that produced them.
inline constexpr std::string_view kMixingId = "splitmix64-chain/v1";

std::uint64_t splitmix64(std::uint64_t x);

// Folds the words into one 64-bit key: h <- splitmix64(h ^ w) for each word,
// starting from the golden-ratio constant. Platform independent.
std::uint64_t mix_key(std::initializer_list<std::uint64_t> words);

// Top 53 bits as a double in [0, 1).
double to_unit(std::uint64_t bits);

// Counter-based stream: draw n is splitmix64 of (key, n). Copying a stream
// copies its position.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t next();
    double uniform() { return to_unit(next()); }
    // Unbiased integer in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n);

    std::uint64_t position() const { return counter_; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace aoi
