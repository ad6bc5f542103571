#pragma once

// Deterministic random number generation.
//
// Every stochastic component of the library draws from Rng, a thin wrapper
// around std::mt19937_64. The raw engine stream is pinned by the C++
// standard, and the conversions below avoid std::uniform_*_distribution
// (whose output is implementation-defined), so a fixed seed reproduces the
// exact same values on every platform. Stream layout:
//   uniform()        consumes one engine draw, returns (draw >> 11) * 2^-53
//   uniform_int(a,b) consumes one engine draw via uniform()
//   bernoulli(p)     consumes one engine draw via uniform()

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace moo {

class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    void reseed(std::uint64_t seed) { engine_.seed(seed); }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer on [lo, hi], both ends inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1u;
        auto draw = static_cast<std::uint64_t>(uniform() * static_cast<double>(span));
        if (draw >= span) draw = span - 1;  // top-end rounding guard
        return lo + static_cast<std::int64_t>(draw);
    }

    // Uniform index on [0, n); n must be positive.
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1));
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Fisher-Yates shuffle; std::shuffle is not stream-stable across platforms.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[index(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace moo
