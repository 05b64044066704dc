#pragma once

#include <cstdint>
#include <random>

namespace ustat {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Seeded pseudo-random stream. Not thread-safe: give each thread its own stream
// obtained with split().
class Rng {
public:
    using engine_type = std::mt19937_64;

    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }

    // Child stream whose seed depends only on (seed(), stream).
    Rng split(std::uint64_t stream) const;

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, bound); bound must be > 0.
    std::uint64_t uniform_below(std::uint64_t bound);

    // Uniform real in [0, 1) with 53 random bits.
    double uniform01();

    double normal();

    bool bernoulli(double p) { return uniform01() < p; }

    engine_type& engine() noexcept { return engine_; }

private:
    std::uint64_t seed_;
    engine_type engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace ustat
