#pragma once

#include <cstdint>
#include <random>

namespace hypersect {

/// Seed mixer so that (seed, stream) pairs give decorrelated generators.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// mt19937_64 plus a portable [0,1) conversion (std distributions are not
/// bitwise-stable across standard libraries).
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace hypersect
