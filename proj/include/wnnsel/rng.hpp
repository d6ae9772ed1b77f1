#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace wnnsel {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Folds a stream identifier into a base seed. Used to derive independent,
// reproducible substreams per replicate / validation set / cell so parallel
// execution is schedule-independent.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a) {
    return splitmix64(seed ^ splitmix64(a + 0x51aef1c4a22d9b3dULL));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(seed, a), b);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) {
    return derive_seed(derive_seed(seed, a, b), c);
}

// Stream tags separating the independent uses of one user-facing seed.
namespace streams {
inline constexpr std::uint64_t cell = 0xce11;         // per-cell tie breaking
inline constexpr std::uint64_t column_mode = 0x30de;  // per-column mode draws
inline constexpr std::uint64_t initial_5nn = 0x5aa5;  // 5-NN initial fill
inline constexpr std::uint64_t injection = 0x1a57;    // CV artificial masking
inline constexpr std::uint64_t cv_point = 0xcf61;     // CV inner imputation
inline constexpr std::uint64_t sample = 0x5a3b;       // scenario data generation
inline constexpr std::uint64_t mcar = 0x3ca6;         // scenario masking
inline constexpr std::uint64_t method = 0x3e7d;       // per-method imputation seeds
inline constexpr std::uint64_t plan = 0x9186;         // category-plan randomization
}  // namespace streams

// Deterministic generator. Distributions are implemented by hand on top of
// mt19937_64 (whose output sequence is pinned by the standard) so results are
// byte-identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    // Standard normal via Box-Muller; caches the second deviate.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

    // Partial Fisher-Yates: k distinct indices drawn uniformly from [0, n).
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k) {
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        if (k > n) k = n;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(below(n - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        return pool;
    }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace wnnsel
