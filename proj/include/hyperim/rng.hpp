#pragma once

#include <cstdint>
#include <cassert>
#include <cmath>
#include <vector>

namespace hyperim {

// Deterministic counter-style RNG built on the splitmix64 stream.
//
// Every stochastic component derives an independent substream from a master
// seed via fork(), so results are reproducible bit-for-bit regardless of
// evaluation order or worker count. std::random distributions are avoided on
// purpose: their algorithms are implementation-defined, ours are pinned.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Unbiased uniform integer in [0, bound). bound must be > 0.
    std::uint64_t uniform_below(std::uint64_t bound) {
        assert(bound > 0);
        // Lemire's multiply-shift rejection method.
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t threshold = -bound % bound;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Derives an independent substream keyed by up to three indices.
    /// Does not advance this generator's state.
    Rng fork(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const {
        std::uint64_t h = mix(state_ ^ 0xA0761D6478BD642FULL, a);
        h = mix(h, b);
        h = mix(h, c);
        return Rng(h);
    }

    /// Poisson sample by Knuth's product method; suitable for small means.
    std::uint64_t poisson(double mean) {
        assert(mean >= 0.0 && mean < 700.0);
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_below(i));
            std::swap(values[i - 1], values[j]);
        }
    }

  private:
    static std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
        std::uint64_t z = h + 0x9E3779B97F4A7C15ULL * (x + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace hyperim
