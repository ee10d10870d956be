#pragma once

#include <cmath>
#include <cstdint>

namespace nightforge {

/// Counter-based random stream built on the SplitMix64 finalizer.
///
/// A stream is keyed by (master seed, stream index, substream). Identical keys
/// always produce identical draw sequences, independent of which other streams
/// exist or how work is scheduled across threads. The pipeline keys one stream
/// per image (stream index = sorted input position) and splits substreams per
/// draw purpose, so serial and parallel runs are bit-identical.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index, std::uint64_t substream = 0)
        : master_(master_seed), stream_(stream_index) {
        std::uint64_t s = mix(master_seed);
        s = mix(s ^ mix(stream_index + 0x9e3779b97f4a7c15ull));
        s = mix(s ^ mix(substream + 0xd1b54a32d192ed03ull));
        state_ = s;
    }

    /// Fresh stream for the same (seed, index) identity but a distinct purpose.
    RngStream substream(std::uint64_t purpose) const { return RngStream(master_, stream_, purpose); }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    /// Uniform double in [0,1), 53 bits of precision.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). bound must be > 0. Unbiased via rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Standard normal draw via the Box-Muller transform; pairs are generated
    /// from two uniforms and the second value is cached.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - next_unit(); // (0,1], keeps log finite
        double u2 = next_unit();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    // SplitMix64 finalizer (Steele/Lea/Flood; Vigna's fixed-increment variant).
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t master_;
    std::uint64_t stream_;
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Substream labels used by the synthesis pipeline.
namespace draw_purpose {
inline constexpr std::uint64_t lights = 1;
inline constexpr std::uint64_t noise = 2;
} // namespace draw_purpose

} // namespace nightforge
