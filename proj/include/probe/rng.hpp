#pragma once

#include <cstdint>

namespace probe {

/// Counter-based random stream.
///
/// The n-th draw of stream k under seed s is a pure function
///     mix(key(s, k) + n * 0x9E3779B97F4A7C15)
/// where `mix` is the SplitMix64 finaliser and key(s, k) = mix(s ^ mix(k + c)).
/// Streams therefore never depend on how many values another stream drew, and
/// results are identical on every platform.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }
    std::uint64_t draws() const { return counter_; }

    std::uint64_t next_u64();
    /// Uniform in the open interval (0, 1).
    double next_unit();

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace probe
