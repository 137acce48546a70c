#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>

namespace favprop {

// SplitMix64 finalizer. Used only to turn (seed, stream index) pairs into
// well-separated engine seeds, never as the generator itself.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for the `stream`-th substream of a master seed. Trials own disjoint
// substreams, so execution order and worker count cannot change results.
constexpr std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

// Seedable pseudo-random stream around std::mt19937_64. All variates are
// produced from raw 64-bit words by fixed arithmetic, so a given (seed,
// call sequence) yields the same values on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng substream(std::uint64_t seed, std::uint64_t stream) {
        return Rng(derive_stream_seed(seed, stream));
    }

    std::uint64_t raw() { return engine_(); }

    // 53-bit uniform in [0, 1)
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // uniform in [-1, 1)
    double uniform_sym() { return 2.0 * uniform01() - 1.0; }

    // unbiased uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
        if (n == 1) return 0;
        const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(n - 1);
        std::uint64_t x;
        do {
            x = engine_() & mask;
        } while (x >= n);
        return x;
    }

    // circularly-symmetric complex Gaussian, zero mean, unit total variance
    // (real and imaginary parts each N(0, 1/2)); Box-Muller, two words per draw
    std::complex<double> cn01() {
        const double u = uniform01();
        const double v = uniform01();
        const double r = std::sqrt(-std::log1p(-u));  // |z| with E|z|^2 = 1
        const double phi = 2.0 * std::numbers::pi * v;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace favprop
