#ifndef SANDPILE_RANDOM_HPP
#define SANDPILE_RANDOM_HPP

#include <cstdint>

#include "sandpile/matrix.hpp"

namespace sandpile {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed of sample `index` in a batch: mix64(master + (index + 1) * golden gamma).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(master + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

// SplitMix64 stream. Fully determined by its seed.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

private:
    std::uint64_t state_;
};

// Uniform integer in [0, bound) by rejection: draw ceil(bits(bound) / 64)
// words, keep the low bits(bound) bits, retry while >= bound. bound > 0.
Integer uniform_below(SplitMix64& rng, const Integer& bound);

} // namespace sandpile

#endif
