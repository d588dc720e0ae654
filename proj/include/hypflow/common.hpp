#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hypflow {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Tolerance policy: closed-form metric arithmetic vs numerically minimized
// quantities vs inequality checks (scaled by the magnitude of the bound).
inline constexpr double kTolGeo = 1e-9;
inline constexpr double kTolNumeric = 1e-6;

inline double tol_check(double magnitude) {
    return 1e-6 * (1.0 + std::abs(magnitude));
}

// acosh(1 + q) for q >= 0 without cancellation near q = 0.
inline double acosh1p(double q) {
    if (q < 0) q = 0;
    return std::log1p(q + std::sqrt(q * (q + 2.0)));
}

// Deterministic seedable RNG. All randomness in the library flows through
// this wrapper so results are reproducible bit-for-bit per seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(mix(seed)) {}

    std::uint64_t next_u64() {
        // xorshift* on a splitmix-initialized state
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545F4914F6CDD1DULL;
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [lo, hi] inclusive
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (hi < lo) throw Error("Rng::uniform_int: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    // Derived independent stream; deterministic function of (seed, stream).
    Rng fork(std::uint64_t stream) const {
        return Rng(mix(seed_ ^ (0x9E3779B97F4A7C15ULL * (stream + 1))));
    }

    std::uint64_t seed() const { return seed_; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        z = z ^ (z >> 31);
        return z ? z : 0x1234567987654321ULL;
    }

    std::uint64_t seed_;
    std::uint64_t state_;
};

}  // namespace hypflow
