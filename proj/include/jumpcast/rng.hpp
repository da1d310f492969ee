#pragma once

#include <cstdint>
#include <limits>

namespace jumpcast {

/// SplitMix64 finalizer; a bijection on 64-bit words.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Seed of item `index` in a batch rooted at `master`.  A pure function of the pair,
/// so batch items can be produced in any order by any worker.  Distinct indices
/// give distinct seeds because each step is a bijection.
inline constexpr std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(master ^ mix64(index + 0x9e3779b97f4a7c15ull));
}

/// SplitMix64 generator (Steele, Lea and Flood).  Satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    constexpr result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix64(state_);
    }

private:
    std::uint64_t state_;
};

} // namespace jumpcast
