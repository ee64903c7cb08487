#include "aoi/rng.hpp"

namespace aoi {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix_key(std::initializer_list<std::uint64_t> words)
{
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t w : words)
        h = splitmix64(h ^ w);
    return h;
}

double to_unit(std::uint64_t bits)
{
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::next()
{
    return splitmix64(key_ ^ splitmix64(counter_++));
}

std::uint64_t CounterRng::below(std::uint64_t n)
{
    if (n <= 1)
        return 0;
    const std::uint64_t threshold = (0 - n) % n;
    while (true) {
        const std::uint64_t r = next();
        if (r >= threshold)
            return r % n;
    }
}

} // namespace aoi
