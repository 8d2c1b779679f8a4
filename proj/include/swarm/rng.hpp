#pragma once

#include <cstdint>
#include <random>

namespace swarm {

/// Deterministic random stream. All simulation randomness flows through one
/// of these, seeded from the scenario config, so identical (config, seed)
/// pairs replay identical runs. Variates are derived from raw mt19937_64
/// output rather than std distributions, which keeps the stream portable
/// across standard library implementations.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    /// Uniform on [0, 1).
    double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform on [-1, 1].
    double symmetric() { return 2.0 * u01() - 1.0; }

    /// Uniform on [a, b).
    double uniform(double a, double b) { return a + (b - a) * u01(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(eng_()) * n) >> 64);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace swarm
