#pragma once

#include <cstdint>
#include <limits>

namespace edap {

// Splittable deterministic RNG. A stream is identified by the chain of keys
// used to derive it, so independent subsystems (per step / level / color)
// get decorrelated, reproducible streams from one top-level seed.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : state_(mix(seed)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<std::uint64_t>::max(); }

    result_type operator()() { return next(); }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        // rejection sampling to avoid modulo bias
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Derive an independent child stream from this stream's identity and a key.
    Rng split(std::uint64_t key) const {
        Rng child;
        child.state_ = mix(state_ ^ mix(key + 0x165667b19e3779f9ull));
        return child;
    }

    Rng split2(std::uint64_t k1, std::uint64_t k2) const { return split(k1).split(k2); }
    Rng split3(std::uint64_t k1, std::uint64_t k2, std::uint64_t k3) const {
        return split(k1).split(k2).split(k3);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdull;
        z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ull;
        return z ^ (z >> 33);
    }

    std::uint64_t state_;
};

// Poisson sample via inversion for small means and normal-ish rejection
// fallback; deterministic for a given stream regardless of platform stdlib.
std::int64_t poisson_sample(Rng& rng, double mean);

// Binomial(n, p) sample; deterministic across platforms.
std::int64_t binomial_sample(Rng& rng, std::int64_t n, double p);

}  // namespace edap
