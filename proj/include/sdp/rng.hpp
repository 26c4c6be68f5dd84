// Deterministic random source shared by every stochastic component.
//
// All randomness flows through Rng, a wrapper over std::mt19937_64 seeded
// directly (no seed_seq) with explicit output derivations, so a given seed
// yields the same stream on every platform and standard library. Streams for
// concurrent tasks are derived from one master seed via splitmix64.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace sdp {

// One round of the splitmix64 output function.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Stream seed for task `stream` under `master`. Used by the pipeline to give
// each (fold, algorithm) task a private generator; documented in README.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(splitmix64(master) ^ splitmix64(stream * 0x2545f4914f6cdd1dull + 1));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    // Uniform in [0, 1): top 53 bits of one draw.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform_in(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform in [0, n); unbiased by rejection on the low remainder.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t x, r;
        do {
            x = gen_();
            r = x % n;
        } while (x - r > std::uint64_t(0) - n);
        return r;
    }

    // Inclusive bounds.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Fisher-Yates, high index down.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

} // namespace sdp
