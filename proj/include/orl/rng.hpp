#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace orl {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic RNG with self-contained distribution helpers.
///
/// Standard-library distributions are implementation-defined, so all draws
/// are built directly on the mt19937_64 bit stream. Given a seed, every
/// stream of draws is identical across platforms.
class Rng {
public:
    explicit Rng(uint64_t seed) : seed_(seed), eng_(splitmix64(seed)) {}

    uint64_t u64() { return eng_(); }

    /// Uniform double in [0, 1), 53 bits of entropy.
    double uniform() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). Multiply-shift; bias is < n / 2^64.
    int uniform_int(int n) {
        return static_cast<int>((static_cast<unsigned __int128>(u64()) *
                                 static_cast<unsigned __int128>(n)) >> 64);
    }

    /// Standard normal via Box-Muller. Consumes two uniforms per draw.
    double normal() {
        double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    bool bernoulli(double p) { return uniform() < p; }

    /// Independent stream derived from this generator's seed and a tag.
    Rng child(uint64_t stream) const { return Rng(splitmix64(seed_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1)))); }

    uint64_t seed() const { return seed_; }

private:
    uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace orl
