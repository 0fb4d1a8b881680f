#include "rankfd/rng.hpp"

#include <cmath>

#include "rankfd/distributions.hpp"

namespace rankfd::num {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         const std::array<std::uint32_t, 2>& key) {
    const std::uint64_t p0 = std::uint64_t{kPhiloxM0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kPhiloxM1} * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
    key_ = {static_cast<std::uint32_t>(seed),
            static_cast<std::uint32_t>(seed >> 32)};
    // stream/substream ids live in the upper counter words (injective for
    // stream < 2^48, substream < 2^16); the lower two words advance block
    // by block, giving 2^64 blocks per stream
    counter_ = {0u, 0u, static_cast<std::uint32_t>(stream),
                static_cast<std::uint32_t>((stream >> 32) & 0xFFFFu) |
                    (static_cast<std::uint32_t>(substream & 0xFFFFu) << 16)};
}

void RngStream::refill() {
    std::array<std::uint32_t, 4> ctr = counter_;
    std::array<std::uint32_t, 2> key = key_;
    for (int round = 0; round < 10; ++round) {
        philox_round(ctr, key);
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    block_ = ctr;
    block_pos_ = 0;
    if (++counter_[0] == 0u) ++counter_[1];
}

std::uint64_t RngStream::next_u64() {
    if (block_pos_ >= 3) refill(); // need two fresh 32-bit words
    const std::uint64_t lo = block_[block_pos_];
    const std::uint64_t hi = block_[block_pos_ + 1];
    block_pos_ += 2;
    return (hi << 32) | lo;
}

double RngStream::next_uniform() {
    // (0,1): 53-bit mantissa shifted to the cell midpoint
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::next_normal() {
    return normal_quantile(next_uniform());
}

double RngStream::next_double_exponential() {
    const double u = next_uniform();
    // standard Laplace has variance 2; scale to unit variance
    const double x = u < 0.5 ? std::log(2.0 * u) : -std::log(2.0 * (1.0 - u));
    return x / std::sqrt(2.0);
}

double RngStream::next_lognormal(double sigma) {
    return std::exp(sigma * next_normal());
}

} // namespace rankfd::num
