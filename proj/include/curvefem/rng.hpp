#pragma once

// Counter-based random numbers (Philox-4x32-10). Each draw is a pure
// function of (key, counter), which gives O(1) random access into the
// stream: sample paths, noise modes and time steps can be evaluated in any
// order, on any number of threads, with bit-identical results.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace curvefem {

namespace philox {

inline constexpr std::uint32_t kMul0 = 0xD2511F53u;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

/// One Philox-4x32 block with 10 rounds: bijective map of the 128-bit
/// counter for a fixed 64-bit key.
inline std::array<std::uint32_t, 4> block(std::uint64_t key, std::uint32_t c0, std::uint32_t c1,
                                          std::uint32_t c2, std::uint32_t c3) {
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c0;
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c2;
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        const std::uint32_t n0 = hi1 ^ c1 ^ k0;
        const std::uint32_t n1 = lo1;
        const std::uint32_t n2 = hi0 ^ c3 ^ k1;
        const std::uint32_t n3 = lo0;
        c0 = n0;
        c1 = n1;
        c2 = n2;
        c3 = n3;
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return {c0, c1, c2, c3};
}

}  // namespace philox

/// Standard normal draw for the counter (stream_a, stream_b, index): the
/// Philox block supplies two 53-bit uniforms that feed one Box-Muller
/// transform. u1 lies in (0, 1] so the logarithm is always finite.
inline double counter_normal(std::uint64_t key, std::uint32_t stream_a, std::uint32_t stream_b,
                             std::uint64_t index) {
    const auto r = philox::block(key, stream_a, stream_b, static_cast<std::uint32_t>(index),
                                 static_cast<std::uint32_t>(index >> 32));
    const std::uint64_t wa = (static_cast<std::uint64_t>(r[0]) << 32) | r[1];
    const std::uint64_t wb = (static_cast<std::uint64_t>(r[2]) << 32) | r[3];
    const double u1 = static_cast<double>((wa >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(wb >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace curvefem
