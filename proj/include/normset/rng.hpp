#ifndef NORMSET_RNG_HPP
#define NORMSET_RNG_HPP

#include <cstdint>

#include "normset/rational.hpp"

namespace normset {

// SplitMix64. All randomness in the project flows through this generator so
// that results are reproducible from a single 64-bit seed independent of the
// standard library implementation. Sub-streams are derived with split(),
// which hashes the label into a fresh state. The algorithm is frozen by
// policy; changing it invalidates recorded experiments.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n) by rejection; n >= 1
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }

    // uniform integer in [lo, hi] inclusive
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (next() & 1) != 0; }

    // nonzero rational p/q with |p| <= pmax, 1 <= q <= qmax
    Rational rational(long pmax, long qmax) {
        long p = 0;
        while (p == 0) p = range(-pmax, pmax);
        long q = range(1, qmax);
        Rational r(p, q);
        r.canonicalize();
        return r;
    }

    Rng split(std::uint64_t label) const {
        return Rng(state_ ^ (0x9e3779b97f4a7c15ULL * (label + 1)));
    }

  private:
    std::uint64_t state_;
};

} // namespace normset

#endif
