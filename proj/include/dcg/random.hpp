#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace dcg {

/// SplitMix64 (Steele, Lea, Flood 2014). Each call advances the state by the
/// golden-ratio increment and returns the mixed value:
///   z = (s += 0x9e3779b97f4a7c15);
///   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9;
///   z = (z ^ (z >> 27)) * 0x94d049bb133111eb;
///   return z ^ (z >> 31);
/// split() seeds an independent stream from the next output.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next() % span);
    }

    /// Uniform point in the open unit disk scaled by `radius`.
    std::complex<double> in_disk(double radius = 1.0) {
        const double r = radius * std::sqrt(uniform());
        const double t = 2.0 * std::numbers::pi * uniform();
        return std::polar(r, t);
    }

    SplitMix64 split() { return SplitMix64(next()); }

private:
    std::uint64_t state_;
};

}  // namespace dcg
