#pragma once

#include "hr1/rational.hpp"

#include <cstdint>

namespace hr1 {

// SplitMix64: the documented deterministic generator behind --seed. Identical
// output on every platform; numerators and denominators stay bounded so
// downstream exact arithmetic stays fast.
class SeededRng {
  public:
    explicit SeededRng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform integer in [lo, hi].
    long integer(long lo, long hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(next() % span);
    }

    // Rational with numerator in [-bound, bound] and denominator in [1, bound].
    Rational rational(long bound = 6) {
        long num = integer(-bound, bound);
        long den = integer(1, bound);
        return rat(num, den);
    }

    // Nonzero variant.
    Rational nonzero_rational(long bound = 6) {
        Rational r = rational(bound);
        while (r == 0) r = rational(bound);
        return r;
    }

    bool coin() { return (next() & 1) != 0; }

  private:
    uint64_t state_;
};

} // namespace hr1
