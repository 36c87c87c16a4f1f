#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace fogcache {

/// Named substreams so that each consumer of the scenario seed draws from an
/// independent sequence and adding draws in one place never shifts another.
enum class Stream : std::uint64_t {
    Geometry = 1,
    Popularity = 2,
    Separation = 3,
    ClusterFill = 4,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// std::mt19937_64 output is fully specified by the standard; the
/// distributions are not, so the helpers below stay portable.
inline std::mt19937_64 make_rng(std::uint64_t seed, Stream stream, std::uint64_t sub = 0) {
    std::uint64_t s = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stream)));
    s = splitmix64(s ^ splitmix64(sub + 0x632be59bd9b4e019ULL));
    return std::mt19937_64{s};
}

/// Uniform integer in [0, n). n must be positive.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

/// Uniform double in [lo, hi).
inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

/// Picks `count` distinct elements of `pool` (partial Fisher-Yates). The
/// result keeps draw order.
template <typename T>
std::vector<T> sample_without_replacement(std::vector<T> pool, std::size_t count, std::mt19937_64& rng) {
    if (count > pool.size()) count = pool.size();
    for (std::size_t i = 0; i < count; ++i) {
        const auto j = i + uniform_index(rng, pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
}

}  // namespace fogcache
