#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string_view>

namespace bibunc {

/// SplitMix64 engine (Steele, Lea & Flood). Satisfies UniformRandomBitGenerator.
///
/// Every random quantity in the library is drawn from a stream keyed by the
/// run seed plus a tuple of integers (iteration, item, chain, ...). Seeding
/// costs one hash, so per-item streams are cheap, and a draw never depends on
/// how work was scheduled across threads.
class Stream {
public:
    using result_type = std::uint64_t;

    explicit Stream(std::uint64_t state = 0) noexcept : state_(state) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Finalizer used to combine stream keys.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives the stream for (seed, keys...).
Stream substream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) noexcept;

/// FNV-1a over the bytes of a label; stable across platforms.
std::uint64_t hash_label(std::string_view label) noexcept;

/// Domain tags keep the key spaces of different consumers apart.
namespace stream_tag {
inline constexpr std::uint64_t kMcmcChain = 0x6d636d63;        // "mcmc"
inline constexpr std::uint64_t kPredictive = 0x70726564;       // "pred"
inline constexpr std::uint64_t kIteration = 0x69746572;        // "iter"
inline constexpr std::uint64_t kItem = 0x6974656d;             // "item"
inline constexpr std::uint64_t kScenario = 0x7363656e;         // "scen"
inline constexpr std::uint64_t kPrior = 0x7072696f;            // "prio"
inline constexpr std::uint64_t kTraining = 0x7472616e;         // "tran"
}  // namespace stream_tag

}  // namespace bibunc
