#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace normbank {

// FNV-1a 64-bit. Used for run manifests, per-record RNG seeding and content
// fingerprints; not cryptographic.
constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

constexpr std::uint64_t fnv1a(std::string_view data, std::uint64_t h = kFnvOffset) {
    for (unsigned char c : data) {
        h ^= static_cast<std::uint64_t>(c);
        h *= kFnvPrime;
    }
    return h;
}

constexpr std::uint64_t fnv1a_u64(std::uint64_t v, std::uint64_t h = kFnvOffset) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (i * 8)) & 0xFFu;
        h *= kFnvPrime;
    }
    return h;
}

std::string hex64(std::uint64_t h);

// Deterministic splitmix64 stream. The standard <random> distributions are
// implementation-defined, which would break golden files across toolchains,
// so all seeded choices in the pipeline go through this.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). n must be > 0.
    std::size_t next_below(std::size_t n) {
        return static_cast<std::size_t>(next_u64() % static_cast<std::uint64_t>(n));
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

// Per-record seed: mixes the global seed with a stable string id so records
// can be processed in any order (or in parallel) without changing results.
inline std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view record_id) {
    return fnv1a(record_id, fnv1a_u64(global_seed));
}

}  // namespace normbank
