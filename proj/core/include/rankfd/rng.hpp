#pragma once

#include <array>
#include <cstdint>

namespace rankfd::num {

/// Counter-based random stream (Philox4x32-10). A stream is a pure
/// function of (seed, stream, substream): the same triple yields the same
/// variate sequence on every platform and under any parallel schedule, so
/// simulation replication r and inner Monte-Carlo partition k can draw from
/// independent streams (seed, r, k) without coordination.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0,
                       std::uint64_t substream = 0);

    std::uint64_t next_u64();

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double next_uniform();

    /// Standard normal via the inverse CDF (deterministic, no rejection).
    double next_normal();

    /// Double exponential (Laplace) standardized to unit variance.
    double next_double_exponential();

    /// exp(sigma * Z) with Z standard normal; median 1.
    double next_lognormal(double sigma);

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> block_{};
    int block_pos_ = 4; // empty
};

} // namespace rankfd::num
