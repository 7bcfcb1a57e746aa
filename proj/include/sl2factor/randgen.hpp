#pragma once

#include <cstdint>

#include "sl2factor/sl2.hpp"

namespace sl2factor {

/**
 * 64-bit linear congruential generator, fully pinned so sampled test data is
 * identical across platforms and runs: state <- state * 6364136223846793005
 * + 1442695040888963407 (mod 2^64), seeded with the raw seed value, and
 * uniform(m) = (next() >> 32) % m for m <= 2^32. The modulo bias is
 * irrelevant at the tiny ranges used here and keeps the contract simple.
 */
class Lcg64 {
public:
    explicit Lcg64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }

    /// Uniform draw from [0, m); m must be nonzero and fit in 32 bits.
    std::uint64_t uniform(std::uint64_t m) {
        return (next() >> 32) % m;
    }

    /// Uniform draw from [lo, hi] inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(uniform(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t state_;
};

/// Denominator-free element with both coordinates uniform in [-height,
/// height] (y fixed to 0 over the rationals).
RingElement random_element(Lcg64& rng, const Ring& ring, long height);

/// As random_element but rerolled until nonzero.
RingElement random_nonzero_param(Lcg64& rng, const Ring& ring, long height);

/// Alternating word of exactly the given length: first side drawn uniformly,
/// every parameter a nonzero denominator-free element of the given height.
ElemWord random_word(Lcg64& rng, const Ring& ring, int length, long height);

/// eval of a random word: the sampling distribution over matrices is "take
/// `length` alternating elementary factors with parameters in the height
/// box"; nothing further is claimed about it.
Mat2 random_matrix(Lcg64& rng, const Ring& ring, int length, long height);

}  // namespace sl2factor
