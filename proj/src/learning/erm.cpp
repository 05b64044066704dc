#include "ustat/learning.hpp"

namespace ustat {

ErmResult erm_finite_class(std::span<const Kernel* const> kernels, const SampleSet& samples,
                           const RiskEstimator& estimator, const EstimatorOptions& options) {
    require(!kernels.empty(), ErrorCode::EmptyProblem, "ERM over an empty class");
    const IndexSpace space(samples.sizes(), kernels.front()->degrees());

    ErmResult out;
    out.risks.reserve(kernels.size());
    if (estimator.kind == RiskEstimator::Kind::Complete) {
        for (const Kernel* k : kernels) out.risks.push_back(complete_u(*k, samples, space, options).value);
    } else {
        Rng rng(estimator.seed);
        const TermSet terms = sample_terms(estimator.scheme, space, estimator.b, rng);
        for (const Kernel* k : kernels) {
            const auto r = estimator.scheme == Scheme::Bernoulli ? horvitz_thompson(*k, samples, terms, options)
                                                                 : incomplete_u(*k, samples, terms, options);
            out.risks.push_back(r.value);
        }
    }
    for (std::size_t i = 1; i < out.risks.size(); ++i) {
        if (out.risks[i] < out.risks[out.best]) out.best = i;
    }
    return out;
}

}  // namespace ustat
