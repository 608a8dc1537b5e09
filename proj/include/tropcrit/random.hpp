#ifndef TROPCRIT_RANDOM_HPP
#define TROPCRIT_RANDOM_HPP

// Seeded source of random data vectors. std::uniform_int_distribution is
// implementation-defined, so values are mapped from the raw mt19937_64 stream
// by plain modulo to keep outputs byte-stable across standard libraries.

#include <cstdint>
#include <random>

#include "rational.hpp"

namespace tropcrit {

class Sampler {
public:
    static constexpr std::uint64_t default_seed = 20240601;
    static constexpr int bound = 997;

    explicit Sampler(std::uint64_t seed = default_seed) : seed_(seed), rng_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // Uniform-ish integer in [lo, hi].
    long long integer(long long lo, long long hi) {
        auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long long>(rng_() % span);
    }

    // Nonzero numerator in [-997, 997], denominator in [1, 997].
    Rational rational() {
        long long num = 0;
        while (num == 0) num = integer(-bound, bound);
        return make_rational(num, integer(1, bound));
    }

    RationalVector vector(std::size_t n) {
        RationalVector v;
        for (std::size_t i = 0; i < n; ++i) v.push_back(rational());
        return v;
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 rng_;
};

} // namespace tropcrit

#endif
