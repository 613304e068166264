#pragma once

#include <cstdint>

namespace elci {

// Stateless counter-based generator: every variate is a pure function of
// (seed, stream, index, component), so replications can run on any number
// of threads and still reproduce bit-identical draws.
namespace rng {

// SplitMix64 finalizer.
inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t key(std::uint64_t seed, std::uint64_t stream,
                         std::uint64_t index, std::uint64_t component) {
    std::uint64_t h = mix(seed);
    h = mix(h ^ (0xA0761D6478BD642FULL + stream));
    h = mix(h ^ (0xE7037ED1A0B428DBULL + index));
    h = mix(h ^ (0x8EBC6AF09C88C6E3ULL + component));
    return mix(h);
}

// Uniform draw on the open interval (0, 1).
inline double uniform(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t index, std::uint64_t component) {
    const std::uint64_t bits = key(seed, stream, index, component) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace rng
}  // namespace elci
