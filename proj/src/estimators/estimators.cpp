#include "ustat/estimators.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ustat {

namespace serial {

KahanSum sum_terms(const Kernel& kernel, const SampleSet& samples, const TupleList& terms) {
    KahanSum acc;
    for (std::size_t t = 0; t < terms.size(); ++t) acc.add(kernel(samples, terms[t]));
    return acc;
}

KahanSum sum_space(const Kernel& kernel, const SampleSet& samples, const IndexSpace& space, std::uint64_t cap) {
    KahanSum acc;
    TupleEnumerator it(space, cap);
    while (it.next()) acc.add(kernel(samples, it.current()));
    return acc;
}

}  // namespace serial

namespace parallel {

namespace {

KahanSum merge_in_order(const std::vector<KahanSum>& partials) {
    KahanSum total;
    for (const auto& p : partials) total.merge(p);
    return total;
}

}  // namespace

KahanSum sum_terms(const Kernel& kernel, const SampleSet& samples, const TupleList& terms) {
    const std::size_t n = terms.size();
    const std::size_t chunks = (n + kChunkTerms - 1) / kChunkTerms;
    std::vector<KahanSum> partials(chunks);
#pragma omp parallel for schedule(static)
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t end = std::min(n, (c + 1) * kChunkTerms);
        KahanSum acc;
        for (std::size_t t = c * kChunkTerms; t < end; ++t) acc.add(kernel(samples, terms[t]));
        partials[c] = acc;
    }
    return merge_in_order(partials);
}

KahanSum sum_space(const Kernel& kernel, const SampleSet& samples, const IndexSpace& space, std::uint64_t cap) {
    if (space.cardinality() > BigInt(cap)) {
        // Let the enumerator produce the standard refusal message.
        TupleEnumerator refuse(space, cap);
    }
    const std::uint64_t n = *space.cardinality_u64();
    const std::uint64_t chunks = (n + kChunkTerms - 1) / kChunkTerms;
    std::vector<KahanSum> partials(chunks);
#pragma omp parallel for schedule(static)
    for (std::uint64_t c = 0; c < chunks; ++c) {
        const std::uint64_t start = c * kChunkTerms;
        const std::uint64_t count = std::min<std::uint64_t>(kChunkTerms, n - start);
        TupleEnumerator it(space, start, cap);
        KahanSum acc;
        for (std::uint64_t t = 0; t < count && it.next(); ++t) acc.add(kernel(samples, it.current()));
        partials[c] = acc;
    }
    return merge_in_order(partials);
}

}  // namespace parallel

namespace {

KahanSum reduce_terms(const Kernel& kernel, const SampleSet& samples, const TupleList& terms,
                      const EstimatorOptions& options) {
    return options.execution == Execution::Parallel ? parallel::sum_terms(kernel, samples, terms)
                                                    : serial::sum_terms(kernel, samples, terms);
}

}  // namespace

EstimateResult complete_u(const Kernel& kernel, const SampleSet& samples, const IndexSpace& space,
                          const EstimatorOptions& options) {
    check_compatible(kernel, samples, space);
    const KahanSum sum = options.execution == Execution::Parallel
                             ? parallel::sum_space(kernel, samples, space, options.enumeration_cap)
                             : serial::sum_space(kernel, samples, space, options.enumeration_cap);
    const auto card = *space.cardinality_u64();
    return {sum.value() / static_cast<double>(card), card, "complete", space, std::nullopt};
}

EstimateResult incomplete_u(const Kernel& kernel, const SampleSet& samples, const TermSet& terms,
                            const EstimatorOptions& options) {
    check_compatible(kernel, samples, terms.space());
    require(terms.scheme() != Scheme::Bernoulli, ErrorCode::InvalidArgument,
            "Bernoulli term sets are estimated with horvitz_thompson");
    require(!terms.empty(), ErrorCode::InvalidArgument, "incomplete U-statistic over an empty term set");
    const KahanSum sum = reduce_terms(kernel, samples, terms.terms(), options);
    const auto b = static_cast<std::uint64_t>(terms.size());
    return {sum.value() / static_cast<double>(b), b, std::string(scheme_name(terms.scheme())), terms.space(),
            terms.seed()};
}

EstimateResult horvitz_thompson(const Kernel& kernel, const SampleSet& samples, const TermSet& terms,
                                const EstimatorOptions& options) {
    check_compatible(kernel, samples, terms.space());
    require(terms.scheme() != Scheme::WithReplacement, ErrorCode::InvalidArgument,
            "Horvitz-Thompson estimation needs a without-replacement design");
    const std::string scheme = "ht_" + std::string(scheme_name(terms.scheme()));
    const auto used = static_cast<std::uint64_t>(terms.size());
    if (terms.empty()) return {0.0, 0, scheme, terms.space(), terms.seed()};
    const KahanSum sum = reduce_terms(kernel, samples, terms.terms(), options);
    // Equal inclusion probabilities: (1/#Lambda) * sum H / (B/#Lambda) = sum H / B.
    return {sum.value() / static_cast<double>(terms.requested_b()), used, scheme, terms.space(), terms.seed()};
}

EstimateResult horvitz_thompson(const Kernel& kernel, const SampleSet& samples, const TermSet& terms,
                                const IndexSpace& space, const EstimatorOptions& options) {
    require(terms.space() == space, ErrorCode::InvalidArgument, "term set was drawn from a different index space");
    return horvitz_thompson(kernel, samples, terms, options);
}

EstimateResult horvitz_thompson(const Kernel& kernel, const SampleSet& samples, const TermSet& terms,
                                std::span<const double> inclusion_probabilities, const EstimatorOptions&) {
    check_compatible(kernel, samples, terms.space());
    require(terms.scheme() != Scheme::WithReplacement, ErrorCode::InvalidArgument,
            "Horvitz-Thompson estimation needs a without-replacement design");
    require(inclusion_probabilities.size() == terms.size(), ErrorCode::InvalidArgument,
            "one inclusion probability per sampled term is required");
    KahanSum acc;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const double pi = inclusion_probabilities[t];
        require(pi > 0.0 && pi <= 1.0, ErrorCode::InvalidArgument, "inclusion probabilities must lie in (0, 1]");
        acc.add(kernel(samples, terms[t]) / pi);
    }
    const std::string scheme = "ht_" + std::string(scheme_name(terms.scheme()));
    return {acc.value() / terms.space().cardinality_double(), static_cast<std::uint64_t>(terms.size()), scheme,
            terms.space(), terms.seed()};
}

double hoeffding_block_average(const Kernel& kernel, const SampleSet& samples, const IndexSpace& space,
                               const std::vector<std::vector<std::uint32_t>>& permutations) {
    check_compatible(kernel, samples, space);
    require(permutations.size() == space.blocks(), ErrorCode::InvalidArgument, "one permutation per block is required");
    for (std::size_t k = 0; k < space.blocks(); ++k) {
        const auto& perm = permutations[k];
        require(perm.size() == space.sizes()[k], ErrorCode::InvalidArgument,
                "permutation " + std::to_string(k) + " has the wrong length");
        std::vector<bool> seen(perm.size(), false);
        for (auto v : perm) {
            require(v < perm.size() && !seen[v], ErrorCode::InvalidArgument,
                    "permutation " + std::to_string(k) + " is malformed");
            seen[v] = true;
        }
    }

    const std::size_t blocks = space.min_blocks();
    std::vector<std::uint32_t> flat(space.total_degree());
    KahanSum acc;
    for (std::size_t l = 0; l < blocks; ++l) {
        for (std::size_t k = 0; k < space.blocks(); ++k) {
            const std::size_t d = space.degrees()[k];
            std::uint32_t* dst = flat.data() + space.offsets()[k];
            for (std::size_t i = 0; i < d; ++i) dst[i] = permutations[k][l * d + i];
            std::sort(dst, dst + d);
        }
        acc.add(kernel(samples, TupleRef(flat.data(), space.offsets())));
    }
    return acc.value() / static_cast<double>(blocks);
}

}  // namespace ustat
