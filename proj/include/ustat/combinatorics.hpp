#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "ustat/rng.hpp"

namespace ustat {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(std::uint64_t n, std::uint64_t k);

// C(n, k) clamped to UINT64_MAX on overflow.
std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k);

// ln C(n, k) without forming the integer.
double log_binomial(std::uint64_t n, std::uint64_t k);

// Uniform draw in [0, bound) for an arbitrary-precision bound > 0.
BigInt uniform_below(Rng& rng, const BigInt& bound);

bool fits_u64(const BigInt& value);

}  // namespace ustat
