#include "ustat/variance_bounds.hpp"

#include <cmath>
#include <set>

#include "ustat/estimators.hpp"
#include "ustat/summation.hpp"

namespace ustat {

BoundInputs BoundInputs::from_space(const IndexSpace& space, double kernel_bound, double vc_dimension,
                                    std::uint64_t b, double delta) {
    BoundInputs in;
    in.kernel_bound = kernel_bound;
    in.vc_dimension = vc_dimension;
    in.min_blocks = space.min_blocks();
    in.log_lambda = space.log1p_cardinality();
    in.b = b;
    in.delta = delta;
    in.pooled_n = 0;
    for (auto n : space.sizes()) in.pooled_n += n;
    return in;
}

void BoundInputs::validate() const {
    require(kernel_bound > 0.0, ErrorCode::InvalidArgument, "kernel bound M must be > 0");
    require(vc_dimension >= 1.0, ErrorCode::InvalidArgument, "VC dimension must be >= 1");
    require(min_blocks >= 1, ErrorCode::InvalidArgument, "N must be >= 1");
    require(log_lambda >= 0.0, ErrorCode::InvalidArgument, "ln(1 + #Lambda) must be >= 0");
    require(b >= 1, ErrorCode::InvalidArgument, "B must be >= 1");
    require(delta > 0.0 && delta < 1.0, ErrorCode::InvalidArgument, "delta must lie strictly inside (0, 1)");
}

double incomplete_variance(double var_complete, double var_kernel, std::uint64_t b) {
    require(b >= 1, ErrorCode::InvalidArgument, "B must be >= 1");
    require(var_complete >= 0.0 && var_kernel >= 0.0, ErrorCode::InvalidArgument, "variances must be >= 0");
    const double inv_b = 1.0 / static_cast<double>(b);
    return (1.0 - inv_b) * var_complete + inv_b * var_kernel;
}

double degree2_variance(const VarianceDecomposition& d) {
    require(d.n >= 2, ErrorCode::InvalidArgument, "degree-2 variance needs n >= 2");
    require(d.sigma1_sq >= 0.0 && d.sigma2_sq >= 0.0, ErrorCode::InvalidArgument, "variance components must be >= 0");
    const auto n = static_cast<double>(d.n);
    return 4.0 * d.sigma1_sq / n + 2.0 * d.sigma2_sq / (n * (n - 1.0));
}

VarianceDecomposition estimate_projections(const Kernel& kernel, const SampleSet& samples) {
    require(samples.blocks() == 1 && kernel.degrees() == std::vector<std::size_t>{2}, ErrorCode::InvalidDegrees,
            "projection estimates need a one-sample degree-2 kernel");
    const std::size_t n = samples.block(0).size();
    require(n >= 4, ErrorCode::InvalidArgument, "projection estimates need n >= 4");

    // Pairwise kernel values, upper triangle row-major.
    std::vector<double> h(n * (n - 1) / 2);
    std::vector<KahanSum> row_sums(n);
    KahanSum total;
    const std::vector<std::size_t> offsets{0, 2};
    std::uint32_t pair[2];
    std::size_t at = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            pair[0] = i;
            pair[1] = j;
            const double v = kernel(samples, TupleRef(pair, offsets));
            h[at++] = v;
            row_sums[i].add(v);
            row_sums[j].add(v);
            total.add(v);
        }
    }
    const double un = total.value() / static_cast<double>(h.size());
    std::vector<double> h1(n);
    KahanSum s1;
    for (std::size_t i = 0; i < n; ++i) {
        h1[i] = row_sums[i].value() / static_cast<double>(n - 1) - un;
        s1.add(h1[i] * h1[i]);
    }
    KahanSum s2;
    at = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double r = h[at++] - un - h1[i] - h1[j];
            s2.add(r * r);
        }
    }
    return {s1.value() / static_cast<double>(n), s2.value() / static_cast<double>(h.size()), n};
}

double complete_deviation_bound(const BoundInputs& in) {
    in.validate();
    const auto n = static_cast<double>(in.min_blocks);
    return in.kernel_bound *
           (2.0 * std::sqrt(2.0 * in.vc_dimension * std::log1p(n) / n) + std::sqrt(std::log(1.0 / in.delta) / n));
}

double incomplete_vs_complete_bound(const BoundInputs& in) {
    in.validate();
    const auto b = static_cast<double>(in.b);
    return in.kernel_bound * std::sqrt(2.0 * (in.vc_dimension * in.log_lambda + std::log(2.0 / in.delta)) / b);
}

double incomplete_total_bound(const BoundInputs& in) {
    in.validate();
    const auto n = static_cast<double>(in.min_blocks);
    const auto b = static_cast<double>(in.b);
    const double uniform_term = 2.0 * std::sqrt(2.0 * in.vc_dimension * std::log1p(n) / n);
    const double confidence_term = std::sqrt(std::log(2.0 / in.delta) / n);
    const double sampling_term = std::sqrt(2.0 * (in.vc_dimension * in.log_lambda + std::log(4.0 / in.delta)) / b);
    return in.kernel_bound * (uniform_term + confidence_term + sampling_term);
}

double ht_deviation_bound(const BoundInputs& in, Scheme scheme) {
    in.validate();
    const auto b = static_cast<double>(in.b);
    const double l = std::log(2.0 / in.delta) + in.vc_dimension * in.log_lambda;
    switch (scheme) {
        case Scheme::Bernoulli:
            return 2.0 * in.kernel_bound * std::sqrt(l / b) + 2.0 * l * in.kernel_bound / (3.0 * b);
        case Scheme::WithoutReplacement: return std::sqrt(2.0) * in.kernel_bound * std::sqrt(l / b);
        case Scheme::WithReplacement: break;
    }
    fail(ErrorCode::InvalidArgument, "the Horvitz-Thompson bound covers Bernoulli and without-replacement designs");
}

double penalty(const PenaltyInputs& in, const ModelSpec& model) {
    require(in.b >= 1 && in.min_blocks >= 1 && in.pooled_n >= 1, ErrorCode::InvalidArgument,
            "penalty needs B, N, n >= 1");
    require(model.model_index >= 1, ErrorCode::InvalidArgument, "model index must be >= 1");
    require(model.vc_dimension > 0.0 && model.kernel_bound > 0.0, ErrorCode::InvalidArgument,
            "model VC dimension and kernel bound must be > 0");
    require(in.envelope >= model.kernel_bound, ErrorCode::InvalidArgument, "envelope M must dominate every M_m");
    const auto n_blocks = static_cast<double>(in.min_blocks);
    const auto b = static_cast<double>(in.b);
    const auto n = static_cast<double>(in.pooled_n);
    const double v = model.vc_dimension;
    const double class_term =
        2.0 * model.kernel_bound *
        (std::sqrt(2.0 * v * std::log1p(n_blocks) / n_blocks) +
         std::sqrt(2.0 * (std::log(2.0) + v * in.log_lambda) / b));
    const double selection_term =
        2.0 * in.envelope * std::sqrt((b + n) * std::log(static_cast<double>(model.model_index)) / (b * b));
    return class_term + selection_term;
}

std::size_t select_penalized(std::span<const std::size_t> model_indices, std::span<const double> risks,
                             std::span<const double> penalties) {
    require(!model_indices.empty(), ErrorCode::InvalidArgument, "model selection over an empty list");
    require(model_indices.size() == risks.size() && risks.size() == penalties.size(), ErrorCode::InvalidArgument,
            "model indices, risks and penalties must have equal length");
    std::size_t best = 0;
    for (std::size_t i = 1; i < model_indices.size(); ++i) {
        const double ci = risks[i] + penalties[i];
        const double cb = risks[best] + penalties[best];
        if (ci < cb || (ci == cb && model_indices[i] < model_indices[best])) best = i;
    }
    return model_indices[best];
}

Selection select_model(std::span<const ModelSpec> models, const PenaltyInputs& in) {
    require(!models.empty(), ErrorCode::InvalidArgument, "model selection over an empty list");
    std::set<std::size_t> seen;
    Selection out;
    std::vector<std::size_t> indices;
    std::vector<double> risks;
    for (const auto& m : models) {
        require(seen.insert(m.model_index).second, ErrorCode::InvalidArgument,
                "duplicate model index " + std::to_string(m.model_index));
        indices.push_back(m.model_index);
        risks.push_back(m.risk);
        out.penalties.push_back(penalty(in, m));
        out.criteria.push_back(m.risk + out.penalties.back());
    }
    out.model_index = select_penalized(indices, risks, out.penalties);
    return out;
}

}  // namespace ustat
