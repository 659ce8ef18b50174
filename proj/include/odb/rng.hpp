#pragma once

#include <cmath>
#include <cstdint>

// Counter-based randomness: every draw is a pure function of a 64-bit key
// tuple, so any cell / sample / stream can be regenerated independently and
// results never depend on evaluation order or worker count.

namespace odb {

// splitmix64 finalizer (Stafford Mix13 constants).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// Chained finalizers with distinct odd offsets per position, so (a,b) and
// (b,a) key different words.
constexpr std::uint64_t hash2(std::uint64_t seed, std::uint64_t a) {
    std::uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ull);
    return mix64(h ^ (a + 0xD1B54A32D192ED03ull));
}

constexpr std::uint64_t hash3(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ull);
    h = mix64(h ^ (a + 0xD1B54A32D192ED03ull));
    return mix64(h ^ (b + 0x8CB92BA72F3D8DD7ull));
}

constexpr std::uint64_t hash4(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                              std::uint64_t c) {
    return mix64(hash3(seed, a, b) ^ (c + 0xEB44ACCAB455D165ull));
}

// Uniform in [0,1) with 53 random bits.
constexpr double u01(std::uint64_t w) {
    return static_cast<double>(w >> 11) * 0x1.0p-53;
}

// Uniform in (0,1]: never 0, safe under log().
constexpr double u01_open0(std::uint64_t w) {
    return (static_cast<double>(w >> 11) + 1.0) * 0x1.0p-53;
}

// Standard normal from two counter words (Box-Muller, cosine branch).
inline double gaussian(std::uint64_t w1, std::uint64_t w2) {
    const double u = u01_open0(w1);
    const double v = u01(w2);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925287 * v);
}

// Stream tags keep unrelated consumers of one master seed decorrelated.
enum : std::uint64_t {
    kStreamMarks = 1,
    kStreamHeights = 2,
    kStreamWalks = 3,
    kStreamGue = 4,
};

}  // namespace odb
