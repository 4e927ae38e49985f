#pragma once

#include <cmath>
#include <cstdint>

namespace blochsim {

/// Seeding contract for every stochastic operation. Identical (seed,
/// stream_id, sample index) always reproduces the same draws, independent of
/// how samples are distributed across workers.
struct RngSpec {
    std::uint64_t seed = 0x51b07e5d2026ULL;  // fixed default, never wall clock
    std::uint64_t stream_id = 0;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace detail

/// Per-sample generator: its whole stream is a pure function of
/// (spec, sample_index). splitmix64 over a mixed counter.
class SampleRng {
public:
    SampleRng(const RngSpec& spec, std::uint64_t sample_index) {
        state_ = spec.seed;
        state_ ^= detail::splitmix64(state_) + spec.stream_id;
        state_ ^= detail::splitmix64(state_) + sample_index;
        (void)detail::splitmix64(state_);  // decorrelate low-entropy seeds
    }

    std::uint64_t next_u64() { return detail::splitmix64(state_); }

    /// uniform on [0, 1), 53-bit resolution
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Exp(1) via inverse CDF over lattice midpoints, so the result is
    /// strictly positive and finite
    double next_exponential() {
        const double u = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
        return -std::log(u);
    }

private:
    std::uint64_t state_ = 0;
};

} // namespace blochsim
