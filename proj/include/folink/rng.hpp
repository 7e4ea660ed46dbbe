#pragma once

#include <cstdint>

namespace folink {

/// SplitMix64 finalizer: a strong 64-bit mixing function.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based random draw keyed by (seed, trial, lane, counter). There is
/// no shared generator state, so per-trial outcomes are independent of how
/// trials are scheduled across workers.
constexpr std::uint64_t counter_rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t lane,
                                    std::uint64_t counter) {
    return mix64(mix64(mix64(seed ^ 0x6a09e667f3bcc909ULL) ^ trial) ^
                 (lane * 0xd1342543de82ef95ULL + counter));
}

/// Threshold such that (draw < threshold) happens with probability p, p < 1.
constexpr std::uint64_t probability_threshold(double p) {
    if (p <= 0.0) {
        return 0;
    }
    return static_cast<std::uint64_t>(p * 18446744073709551616.0);  // p · 2^64
}

}  // namespace folink
