#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., Random123). Output is a
// pure function of (key, counter), so any sample can be regenerated without
// replaying a stream and parallel partitions never change the draws.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace sdic {

class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr const char* kName = "philox4x32-10";

    static constexpr Counter generate(Counter ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kW0;
                key[1] += kW1;
            }
            const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

    static constexpr Key key_from_seed(std::uint64_t seed) {
        return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    }

private:
    static constexpr std::uint32_t kM0 = 0xD2511F53u;
    static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kW0 = 0x9E3779B9u;
    static constexpr std::uint32_t kW1 = 0xBB67AE85u;
};

/// Two standard normals from one Philox block via Box-Muller on two 53-bit uniforms.
inline std::array<double, 2> normal_pair(const Philox4x32::Counter& block) {
    constexpr double kInv53 = 1.0 / 9007199254740992.0; // 2^-53
    const std::uint64_t a = (std::uint64_t{block[0]} << 21) ^ (block[1] >> 11);
    const std::uint64_t b = (std::uint64_t{block[2]} << 21) ^ (block[3] >> 11);
    const double u1 = (static_cast<double>(a & ((1ull << 53) - 1)) + 1.0) * kInv53; // (0, 1]
    const double u2 = static_cast<double>(b & ((1ull << 53) - 1)) * kInv53;         // [0, 1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
}

} // namespace sdic
