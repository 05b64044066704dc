#include <algorithm>
#include <numeric>

#include "ustat/learning.hpp"

namespace ustat {

void SgdConfig::validate(const IndexSpace& space) const {
    require(eta0 > 0.0, ErrorCode::InvalidArgument, "eta0 must be > 0");
    switch (mode) {
        case GradientMode::Incomplete:
            require(b >= 1, ErrorCode::InvalidArgument, "incomplete gradients need B >= 1");
            require(subsample_sizes.empty(), ErrorCode::InvalidArgument,
                    "subsample sizes are only meaningful for complete-subsample gradients");
            break;
        case GradientMode::CompleteSubsample:
            require(b == 0, ErrorCode::InvalidArgument, "B is only meaningful for incomplete gradients");
            require(subsample_sizes.size() == space.blocks(), ErrorCode::InvalidArgument,
                    "one subsample size per block is required");
            for (std::size_t k = 0; k < space.blocks(); ++k) {
                require(subsample_sizes[k] >= space.degrees()[k], ErrorCode::InvalidDegrees,
                        "subsample size n'_" + std::to_string(k) + " is below the kernel degree");
                require(subsample_sizes[k] <= space.sizes()[k], ErrorCode::InvalidArgument,
                        "subsample size n'_" + std::to_string(k) + " exceeds the sample size");
            }
            break;
        case GradientMode::Full:
            require(b == 0 && subsample_sizes.empty(), ErrorCode::InvalidArgument,
                    "full gradients take neither B nor subsample sizes");
            break;
    }
}

namespace {

// Sorted uniform d-subset of [0, n) (partial Fisher-Yates).
std::vector<std::uint32_t> uniform_subset(std::size_t n, std::size_t d, Rng& rng) {
    std::vector<std::uint32_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0u);
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t j = i + rng.uniform_below(n - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(d);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace

TupleList draw_gradient_terms(const IndexSpace& space, const SgdConfig& config, Rng& rng) {
    switch (config.mode) {
        case GradientMode::Incomplete: return sample_with_replacement(space, config.b, rng).terms();
        case GradientMode::Full: return full_termset(space).terms();
        case GradientMode::CompleteSubsample: break;
    }
    std::vector<std::vector<std::uint32_t>> picks;
    for (std::size_t k = 0; k < space.blocks(); ++k) picks.push_back(uniform_subset(space.sizes()[k], config.subsample_sizes[k], rng));
    const IndexSpace sub(config.subsample_sizes, space.degrees());
    TupleList out(space);
    out.reserve(*sub.cardinality_u64());
    std::vector<std::uint32_t> mapped(space.total_degree());
    TupleEnumerator it(sub);
    while (it.next()) {
        const TupleRef t = it.current();
        for (std::size_t k = 0; k < space.blocks(); ++k) {
            const std::size_t off = space.offsets()[k];
            for (std::size_t i = off; i < space.offsets()[k + 1]; ++i) mapped[i] = picks[k][t[i]];
        }
        out.push_back(TupleRef(mapped.data(), space.offsets()));
    }
    return out;
}

Eigen::VectorXd estimate_gradient(const DifferentiableObjective& objective, const SampleSet& samples,
                                  const Eigen::VectorXd& theta, const SgdConfig& config, Rng& rng) {
    const IndexSpace space(samples.sizes(), objective.degrees());
    const TupleList terms = draw_gradient_terms(space, config, rng);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(objective.parameter_size());
    objective.add_gradient_sum(theta, samples, terms, g);
    return g / static_cast<double>(terms.size());
}

SgdResult sgd(const DifferentiableObjective& objective, const SampleSet& samples, const SgdConfig& config,
              Eigen::VectorXd theta0, const RiskProbe& probe) {
    const IndexSpace space(samples.sizes(), objective.degrees());
    config.validate(space);
    require(theta0.size() == objective.parameter_size(), ErrorCode::InvalidArgument,
            "initial parameter has the wrong size");

    SgdResult out;
    out.theta = std::move(theta0);
    auto record = [&](std::size_t t, double gnorm) {
        SgdRecord r{t, gnorm, std::nullopt};
        if (probe) r.risk = probe(out.theta);
        out.trajectory.push_back(r);
    };
    record(0, 0.0);

    const Rng root(config.seed);
    // Full gradients are deterministic; build the term list once.
    std::optional<TupleList> full;
    if (config.mode == GradientMode::Full) full = full_termset(space).terms();

    Eigen::VectorXd g(objective.parameter_size());
    for (std::size_t t = 1; t <= config.steps; ++t) {
        g.setZero();
        if (full) {
            objective.add_gradient_sum(out.theta, samples, *full, g);
            g /= static_cast<double>(full->size());
        } else {
            Rng rng = root.split(t);
            const TupleList terms = draw_gradient_terms(space, config, rng);
            objective.add_gradient_sum(out.theta, samples, terms, g);
            g /= static_cast<double>(terms.size());
        }
        const double eta = 1.0 / (config.eta0 * static_cast<double>(t));
        out.theta -= eta * g;
        if (config.projection == ProjectionPolicy::EveryStep) objective.project(out.theta);
        const bool last = t == config.steps;
        if (!last && config.record_every > 0 && t % config.record_every == 0) record(t, g.norm());
        if (last) {
            if (config.projection == ProjectionPolicy::FinalOnly) objective.project(out.theta);
            record(t, g.norm());
        }
    }
    if (config.steps == 0 && config.projection == ProjectionPolicy::FinalOnly) objective.project(out.theta);
    return out;
}

}  // namespace ustat
