#include "sandpile/random.hpp"

#include <stdexcept>

namespace sandpile {

Integer uniform_below(SplitMix64& rng, const Integer& bound) {
    if (sgn(bound) <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
    if (bound == 1) return 0;

    const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    Integer candidate;
    Integer word;
    for (;;) {
        candidate = 0;
        for (std::size_t i = 0; i < words; ++i) {
            const std::uint64_t w = rng();
            // Built from two 32-bit halves so this does not depend on sizeof(unsigned long).
            word = static_cast<unsigned long>(w >> 32);
            word <<= 32;
            word += static_cast<unsigned long>(w & 0xffffffffULL);
            candidate <<= 64;
            candidate += word;
        }
        mpz_fdiv_r_2exp(candidate.get_mpz_t(), candidate.get_mpz_t(), bits);
        if (candidate < bound) return candidate;
    }
}

} // namespace sandpile
