#pragma once

#include <cstdint>

namespace spde2d {

// splitmix64 finalizer.  Full-avalanche 64-bit mix.
constexpr std::uint64_t avalanche64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Stateless derivation of substream seeds: chain mix_seed(seed, tag) for each
// component of the stream identity (role, replication, mode indices, ...).
// Order matters; the chain is injective enough that distinct identities give
// unrelated seeds.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) noexcept {
    return avalanche64(seed + 0x9E3779B97F4A7C15ULL + avalanche64(tag));
}

// Stream role tags.  Every consumer of randomness derives its seed through a
// distinct role so that adding a consumer never shifts another one's stream.
namespace seed_tag {
inline constexpr std::uint64_t coordinates = 0x636F6F7264ULL;   // per-mode OU paths
inline constexpr std::uint64_t replication = 0x7265706CULL;     // per-replication root
inline constexpr std::uint64_t ou_path = 0x6F757061ULL;         // standalone OU simulation
}  // namespace seed_tag

// xoshiro256++ with Box-Muller normals.  Seeded from a single 64-bit value
// through splitmix64, so streams with unrelated seeds are unrelated.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept {
        std::uint64_t s = seed;
        for (auto& word : state_) {
            s += 0x9E3779B97F4A7C15ULL;
            word = avalanche64(s);
        }
        have_cached_normal_ = false;
        cached_normal_ = 0.0;
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on (0,1]; never returns 0, so log() is safe.
    double next_uniform() noexcept {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the second member of each pair is cached.
    double next_normal() noexcept;

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    double cached_normal_;
    bool have_cached_normal_;
};

}  // namespace spde2d
