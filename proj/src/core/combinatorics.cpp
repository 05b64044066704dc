#include "ustat/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ustat/error.hpp"

namespace ustat {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt result = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        result *= (n - i);
        result /= (i + 1);
    }
    return result;
}

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    unsigned __int128 result = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        // result * (n - i) is exactly divisible by (i + 1); partial values grow
        // monotonically, so the first overflow is final.
        result = result * (n - i) / (i + 1);
        if (result > kMax) return kMax;
    }
    return static_cast<std::uint64_t>(result);
}

double log_binomial(std::uint64_t n, std::uint64_t k) {
    require(k <= n, ErrorCode::InvalidDegrees, "log_binomial: k > n");
    k = std::min(k, n - k);
    if (k == 0) return 0.0;
    // Short products are summed directly: lgamma differences of large
    // arguments lose absolute precision.
    if (k <= 64) {
        double acc = 0.0;
        for (std::uint64_t i = 0; i < k; ++i) {
            acc += std::log(static_cast<double>(n - i) / static_cast<double>(k - i));
        }
        return acc;
    }
    const auto nd = static_cast<double>(n);
    const auto kd = static_cast<double>(k);
    return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
}

bool fits_u64(const BigInt& value) {
    return value >= 0 && value <= BigInt(std::numeric_limits<std::uint64_t>::max());
}

BigInt uniform_below(Rng& rng, const BigInt& bound) {
    require(bound > 0, ErrorCode::InvalidArgument, "uniform_below: bound must be positive");
    if (fits_u64(bound)) return BigInt(rng.uniform_below(bound.convert_to<std::uint64_t>()));

    // Rejection on the smallest enclosing power of two; accepts with p > 1/2.
    const std::size_t bits = boost::multiprecision::msb(bound) + 1;
    const std::size_t words = (bits + 63) / 64;
    const std::size_t top_bits = bits - 64 * (words - 1);
    const std::uint64_t top_mask = top_bits == 64 ? ~0ULL : ((1ULL << top_bits) - 1);
    for (;;) {
        BigInt candidate = 0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t word = rng.next_u64();
            if (w == 0) word &= top_mask;
            candidate <<= 64;
            candidate += word;
        }
        if (candidate < bound) return candidate;
    }
}

}  // namespace ustat
