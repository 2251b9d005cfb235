#pragma once

#include <cmath>
#include <cstdint>

namespace katolab {

// Counter-free splittable generator built on the splitmix64 finalizer.
// Every stream is a pure function of (seed, stream index), so parallel
// workers draw identical values no matter how work is scheduled.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Independent child stream; derivation uses only the parent's seed,
    // not its consumption position.
    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        return Rng(mix(seed ^ mix(index + 0x632be59bd9b4e019ULL)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Box-Muller; draws two uniforms per normal. The log argument is kept
    // strictly positive by shifting the 53-bit integer up by one.
    double normal() {
        double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Standard Cauchy; heavy tails for stress sampling.
    double cauchy() {
        return std::tan(3.1415926535897932384626433832795 * (uniform01() - 0.5));
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace katolab
