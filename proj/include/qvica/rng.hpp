#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>
#include <cmath>

namespace qvica {

// All stochastic operations take an explicit stream so that sub-computations
// (per individual, per iteration, per fold, ...) can run on independently
// seeded streams derived from one master seed.
using Rng = std::mt19937_64;

// splitmix64 finalizer; decorrelates nearby seed values.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Seed derivation used across the project: fold each path component into the
// master seed with mix64. Documented derivation paths:
//   engine streams:   (seed, stage tag, iteration, index)
//   cross-validation: (seed, run index, fold index)
//   experiment grid:  (seed, cell index, run index, fold index)
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = mix64(master);
    for (std::uint64_t c : path) s = mix64(s ^ c);
    return s;
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Uniform draw in (0, 1]. The open lower end keeps a q-bit with alpha^2 = 0
// from ever observing to 0 (r <= 0 is impossible).
inline double uniform01(Rng& rng) {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

// Uniform integer in [lo, hi]. Modulo bias is negligible for the small ranges
// used here; hand-rolled so results do not depend on the standard library's
// distribution internals.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
    return lo + rng() % (hi - lo + 1);
}

// Box-Muller without pair caching; two uniforms per draw.
inline double normal(Rng& rng, double mu, double sigma) {
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    return mu + sigma * z;
}

// Fisher-Yates; self-contained for the same reproducibility reason as above.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(uniform_index(rng, 0, i - 1));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace qvica
