#include "rdcds/rng.hpp"

#include <cassert>
#include <limits>

namespace rdcds {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t mix_seed(std::uint64_t root, std::uint64_t slot, std::uint64_t purpose) {
    std::uint64_t h = splitmix64(root);
    h = splitmix64(h ^ slot);
    return splitmix64(h ^ purpose);
}

std::uint64_t SeededRng::below(std::uint64_t bound) {
    assert(bound > 0);
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t excess = (kMax % bound + 1) % bound;   // 2^64 mod bound
    const std::uint64_t cutoff = kMax - excess;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v > cutoff);
    return v % bound;
}

} // namespace rdcds
