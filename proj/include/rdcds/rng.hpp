#pragma once

#include <cstdint>
#include <random>

namespace rdcds {

// Derives an independent stream seed from (root, slot, purpose). Uses
// splitmix64 so nearby inputs map to unrelated seeds.
std::uint64_t mix_seed(std::uint64_t root, std::uint64_t slot, std::uint64_t purpose);

// Deterministic symbol stream. mt19937_64 is fully specified by the
// standard, so the same seed yields the same draws on every platform;
// below() uses rejection sampling to stay unbiased.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

} // namespace rdcds
