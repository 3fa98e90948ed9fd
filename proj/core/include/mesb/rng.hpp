#pragma once

#include <cstdint>
#include <iterator>
#include <random>
#include <string_view>

namespace mesb {

/// splitmix64 finalizer; used for seed derivation and byte hashing.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Derives an independent child seed from a master seed, a stream tag and an index.
/// Used so that per-evaluation / per-game randomness is a pure function of
/// (master seed, position), independent of execution order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    return mix64(mix64(master ^ mix64(stream)) ^ index);
}

/// FNV-1a over raw bytes; 64-bit.
constexpr std::uint64_t fnv1a64(const unsigned char* data, std::size_t n,
                                std::uint64_t seed = 0xcbf29ce484222325ull) {
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= data[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a64(std::string_view s) {
    return fnv1a64(reinterpret_cast<const unsigned char*>(s.data()), s.size());
}

/// Deterministic random source. The engine (mt19937_64) has a
/// standard-specified output sequence, and all derived draws below avoid
/// std::*_distribution, whose mapping is implementation-defined. Identical
/// seeds therefore give identical draws on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, n). n must be > 0. Rejection sampling, unbiased.
    std::size_t index(std::size_t n) {
        const std::uint64_t bound = n;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % bound);
    }

    /// Uniform double in [0, 1), 53 bits of precision.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Fair coin.
    bool coin() { return (engine_() >> 63) != 0; }

    /// Fisher-Yates shuffle with this source (std::shuffle is implementation-defined).
    template <typename It>
    void shuffle(It first, It last) {
        const auto n = static_cast<std::size_t>(last - first);
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = index(i);
            using std::swap;
            swap(first[i - 1], first[j]);
        }
    }

    template <typename Range>
    void shuffle(Range& range) {
        shuffle(std::begin(range), std::end(range));
    }

private:
    std::mt19937_64 engine_;
};

// Stream tags for derive_seed.
inline constexpr std::uint64_t kStreamSelect = 0x53454c45ull; // parent selection + mutation
inline constexpr std::uint64_t kStreamEval = 0x4556414cull;   // per-evaluation master
inline constexpr std::uint64_t kStreamGame = 0x47414d45ull;   // per-game within an evaluation
inline constexpr std::uint64_t kStreamPlan = 0x504c414eull;   // per-turn planning

} // namespace mesb
