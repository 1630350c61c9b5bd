#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace comboo {

/// Seeded random stream. One instance per run; never shared between runs.
///
/// All draws go through explicit helpers built on raw 64-bit output of
/// std::mt19937_64 (whose sequence is fixed by the standard), so a given seed
/// produces the same stream on every build.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (no cached second value).
    double gaussian() {
        double u1 = 1.0 - uniform(); // (0, 1]
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    /// Uniform index in [0, n). n must be > 0.
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    std::mt19937_64 gen_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Per-run stream seed from (base seed, method name, seed index). Adding a
/// method never perturbs the streams of existing methods.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view method,
                                 std::uint64_t seed_index) {
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a over the method name
    for (char c : method) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return splitmix64(splitmix64(base ^ h) ^ seed_index);
}

} // namespace comboo
