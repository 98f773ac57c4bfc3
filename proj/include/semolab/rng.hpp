#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace semolab {

/// SplitMix64 finalizer; used to decorrelate derived seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a(std::string_view text) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Seed of trial `index` within the stream named `stream_key`. Depends only
/// on its arguments, so results do not depend on scheduling or cell order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view stream_key,
                                    std::uint64_t index) noexcept {
    return splitmix64(splitmix64(master ^ fnv1a(stream_key)) + splitmix64(index));
}

class Rng {
public:
    using Engine = std::mt19937_64;

    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
    }
    /// Uniform integer in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(engine_);
    }
    double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    bool coin() { return (engine_() >> 63) != 0; }

    Engine& engine() noexcept { return engine_; }

    friend bool operator==(const Rng& a, const Rng& b) { return a.engine_ == b.engine_; }

private:
    Engine engine_;
};

}  // namespace semolab
