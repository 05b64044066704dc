#pragma once

// Complete, incomplete and Horvitz-Thompson U-statistics, plus the
// block-average form used in Hoeffding's permutation representation.
//
// Every estimator sums kernel values in a fixed order. Execution::Parallel
// splits the terms into fixed-size chunks reduced with OpenMP and merges the
// chunk partials in chunk order, so its result does not depend on the thread
// count; it agrees with the sequential reference to ~1e-12 relative.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ustat/core.hpp"
#include "ustat/sampling.hpp"
#include "ustat/summation.hpp"

namespace ustat {

enum class Execution { Sequential, Parallel };

struct EstimatorOptions {
    Execution execution = Execution::Sequential;
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
};

struct EstimateResult {
    double value = 0.0;
    std::uint64_t terms_used = 0;
    std::string scheme;
    IndexSpace space;
    std::optional<std::uint64_t> seed;
};

EstimateResult complete_u(const Kernel& kernel, const SampleSet& samples, const IndexSpace& space,
                          const EstimatorOptions& options = {});

// Average over the realized terms; duplicates count with multiplicity.
EstimateResult incomplete_u(const Kernel& kernel, const SampleSet& samples, const TermSet& terms,
                            const EstimatorOptions& options = {});

// (1/#Lambda) * sum over sampled terms of H / pi, with 0/0 = 0 for an empty
// Bernoulli draw.
EstimateResult horvitz_thompson(const Kernel& kernel, const SampleSet& samples, const TermSet& terms,
                                const EstimatorOptions& options = {});
EstimateResult horvitz_thompson(const Kernel& kernel, const SampleSet& samples, const TermSet& terms,
                                const IndexSpace& space, const EstimatorOptions& options = {});
// Unequal inclusion probabilities, one per sampled term.
EstimateResult horvitz_thompson(const Kernel& kernel, const SampleSet& samples, const TermSet& terms,
                                std::span<const double> inclusion_probabilities,
                                const EstimatorOptions& options = {});

// Average of N = min_k floor(n_k/d_k) kernel evaluations on disjoint blocks of
// the permuted samples: block l uses positions l*d_k .. (l+1)*d_k - 1 of
// permutation k.
double hoeffding_block_average(const Kernel& kernel, const SampleSet& samples, const IndexSpace& space,
                               const std::vector<std::vector<std::uint32_t>>& permutations);

// Raw reductions behind the estimators.
namespace serial {
KahanSum sum_terms(const Kernel& kernel, const SampleSet& samples, const TupleList& terms);
KahanSum sum_space(const Kernel& kernel, const SampleSet& samples, const IndexSpace& space, std::uint64_t cap);
}  // namespace serial

namespace parallel {
inline constexpr std::size_t kChunkTerms = 1u << 14;
KahanSum sum_terms(const Kernel& kernel, const SampleSet& samples, const TupleList& terms);
KahanSum sum_space(const Kernel& kernel, const SampleSet& samples, const IndexSpace& space, std::uint64_t cap);
}  // namespace parallel

}  // namespace ustat
