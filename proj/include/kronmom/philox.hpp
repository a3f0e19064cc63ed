#pragma once

#include <array>
#include <cstdint>

namespace kronmom {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output is
/// a pure function of (counter, key), so streams can be evaluated in any
/// order or in parallel.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter generate(Counter ctr, Key key) {
        ctr = round(ctr, key);
        for (int i = 1; i < 10; ++i) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
            ctr = round(ctr, key);
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static constexpr Counter round(const Counter& ctr, const Key& key) {
        const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
};

/// Uniform deviate in [0, 1) with 53 random bits, determined entirely by
/// (seed, x, y).
inline double counter_uniform(std::uint64_t seed, std::uint64_t x, std::uint64_t y) {
    const Philox4x32::Counter ctr = {static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(x >> 32),
                                     static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(y >> 32)};
    const Philox4x32::Key key = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    const auto out = Philox4x32::generate(ctr, key);
    const std::uint64_t bits = (std::uint64_t{out[0]} << 32 | out[1]) >> 11;
    return static_cast<double>(bits) * 0x1.0p-53;
}

/// SplitMix64 finalizer; used to derive independent seeds from an index.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace kronmom
