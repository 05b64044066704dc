#pragma once

// Sampling designs over the index space: uniform with replacement, uniform
// without replacement (fixed size) and Bernoulli (independent inclusion).
// All three have equal first-order inclusion probabilities.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "ustat/core.hpp"

namespace ustat {

enum class Scheme { WithReplacement, WithoutReplacement, Bernoulli };

std::string_view scheme_name(Scheme scheme);
Scheme parse_scheme(std::string_view name);

// Above this many tuples a Bernoulli draw switches from one coin per tuple to
// "binomial count, then uniform subset", which has the same distribution.
inline constexpr std::uint64_t kBernoulliLoopCap = 10'000'000;

class TermSet {
public:
    TermSet(Scheme scheme, IndexSpace space, TupleList terms, std::uint64_t requested_b, std::uint64_t seed);

    Scheme scheme() const noexcept { return scheme_; }
    const IndexSpace& space() const noexcept { return space_; }
    const TupleList& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }
    TupleRef operator[](std::size_t i) const { return terms_[i]; }

    std::uint64_t requested_b() const noexcept { return requested_b_; }
    // pi = B / #Lambda; meaningful for Bernoulli and WithoutReplacement only.
    double inclusion_probability() const noexcept { return inclusion_probability_; }
    std::uint64_t seed() const noexcept { return seed_; }

private:
    Scheme scheme_;
    IndexSpace space_;
    TupleList terms_;
    std::uint64_t requested_b_;
    double inclusion_probability_;
    std::uint64_t seed_;
};

TermSet sample_with_replacement(const IndexSpace& space, std::uint64_t b, Rng& rng);
TermSet sample_without_replacement(const IndexSpace& space, std::uint64_t b, Rng& rng);
TermSet sample_bernoulli(const IndexSpace& space, std::uint64_t expected_b, Rng& rng);

TermSet sample_terms(Scheme scheme, const IndexSpace& space, std::uint64_t b, Rng& rng);

// Every tuple of the space once, in enumeration order, as a without-replacement
// design with B = #Lambda.
TermSet full_termset(const IndexSpace& space, std::uint64_t cap = kDefaultEnumerationCap);

// CSV form: a `scheme,seed,B` header, one metadata row, then one tuple per row
// with blocks separated by ';' and indices by ','.
void write_termset(std::ostream& out, const TermSet& terms);
TermSet read_termset(std::istream& in, const IndexSpace& space);

}  // namespace ustat
