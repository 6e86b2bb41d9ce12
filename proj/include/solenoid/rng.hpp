#pragma once

#include <cstdint>

namespace solenoid {

// Counter-based generator (splitmix64): output i is mix(key + i*GAMMA), so a
// stream is a pure function of (key, counter). Per-path substreams use
// key = seed ^ path_index, which keeps parallel sampling reproducible and
// independent of scheduling.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t key) : key_(key), counter_(0) {}

    static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
        return SplitMix64(seed ^ index);
    }

    std::uint64_t next_u64() {
        std::uint64_t z = key_ + ++counter_ * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo,hi).
    double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace solenoid
