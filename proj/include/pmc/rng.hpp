#ifndef PMC_RNG_HPP
#define PMC_RNG_HPP

#include "pmc/rational.hpp"
#include <cstdint>

namespace pmc {

// Deterministic generator for the property suites. All randomized checks
// record their seed so a report can be replayed bit for bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [lo, hi], inclusive.
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Rational rational(long long maxabs_num = 9, long long maxden = 4) {
        long long n = range(-maxabs_num, maxabs_num);
        long long d = range(1, maxden);
        return Rational(n, d);
    }

    Rational nonzero_rational(long long maxabs_num = 9, long long maxden = 4) {
        for (;;) {
            Rational r = rational(maxabs_num, maxden);
            if (r != 0) return r;
        }
    }

private:
    std::uint64_t state_;
};

} // namespace pmc

#endif
