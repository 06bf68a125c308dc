#pragma once

#include <cstdint>

namespace nkcsim {

// splitmix64: one 64-bit state word, full-period, passes the usual
// statistical batteries, and cheap enough that every run of every cell can
// own a private stream.
inline constexpr const char* kGeneratorId = "splitmix64/v1";

inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Stream seed for (master seed, sweep cell, run index). Each component is
// folded through the avalanche so neighbouring cells/runs share no state.
inline constexpr std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                                  std::uint64_t cell_id,
                                                  std::uint64_t run_index) {
    std::uint64_t h = master_seed + 0x9E3779B97F4A7C15ULL;
    h = mix64(h);
    h = mix64(h + cell_id + 0xBF58476D1CE4E5B9ULL);
    h = mix64(h + run_index + 0x94D049BB133111EBULL);
    return h;
}

class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // Uniform in [0, 1), 53 bits of mantissa.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_unit() < p; }

    int fair_bit() { return bernoulli(0.5) ? 1 : 0; }

private:
    std::uint64_t state_;
};

struct RngPolicy {
    std::uint64_t master_seed = 0;
};

} // namespace nkcsim
