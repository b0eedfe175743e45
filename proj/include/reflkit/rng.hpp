#pragma once

#include <cstdint>
#include <limits>

namespace reflkit {

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based generator: the i-th output is mix64(key + i * gamma), so a
/// stream is fully determined by its key and draws never depend on any other
/// stream. Satisfies UniformRandomBitGenerator.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t key) noexcept : key_(mix64(key)) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept { return mix64(key_ + (++counter_) * kGamma); }

    std::uint64_t counter() const noexcept { return counter_; }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Key of the independent stream for replication `replication` of `cell`.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t cell,
                                   std::uint64_t replication) noexcept {
    std::uint64_t h = mix64(seed ^ 0x243f6a8885a308d3ULL);
    h = mix64(h ^ (cell + 0x13198a2e03707344ULL));
    return mix64(h ^ (replication + 0xa4093822299f31d0ULL));
}

/// Uniform on (0, 1] with 53 random bits; never returns 0.
inline double uniform_open_closed(CounterRng& rng) noexcept {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

}  // namespace reflkit
