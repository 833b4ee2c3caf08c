#pragma once

#include <cstdint>
#include <random>

namespace nhsense {

/// Counter-keyed random stream: (seed, stream, index) fully determines the
/// sequence, so ensembles are reproducible under any parallel schedule.
class KeyedRng {
public:
    KeyedRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
        : engine_(mix(mix(mix(0x9e3779b97f4a7c15ULL ^ seed) + stream) + index)) {}

    std::mt19937_64& engine() { return engine_; }

    double uniform() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }

    std::int64_t binomial(std::int64_t n, double p) {
        if (n <= 0 || p <= 0.0) return 0;
        if (p >= 1.0) return n;
        return std::binomial_distribution<std::int64_t>(n, p)(engine_);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        // splitmix64 finalizer
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace nhsense
