#include <algorithm>
#include <cmath>

#include "ustat/learning.hpp"

namespace ustat {

double squared_euclidean_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_euclidean_distance(a, b));
}

Partition::Partition(std::vector<std::uint32_t> l, std::uint32_t m) : labels(std::move(l)), clusters(m) {
    require(clusters >= 1, ErrorCode::InvalidArgument, "a partition needs at least one cluster");
    for (std::size_t i = 0; i < labels.size(); ++i) {
        require(labels[i] < clusters, ErrorCode::OutOfRange,
                "cluster label " + std::to_string(labels[i]) + " at position " + std::to_string(i) +
                    " is not below " + std::to_string(clusters));
    }
}

ClusteringKernel::ClusteringKernel(Distance distance, Partition partition)
    : distance_(std::move(distance)), partition_(std::move(partition)) {}

double ClusteringKernel::operator()(const SampleSet& samples, TupleRef t) const {
    const Sample& s = samples.block(0);
    require(s.size() == partition_.size(), ErrorCode::InvalidArgument,
            "partition covers " + std::to_string(partition_.size()) + " points but the sample has " +
                std::to_string(s.size()));
    if (partition_.labels[t[0]] != partition_.labels[t[1]]) return 0.0;
    return distance_(s.row(t[0]), s.row(t[1]));
}

double within_cluster_scatter(const SampleSet& samples, const ClusteringKernel& kernel,
                              const EstimatorOptions& options) {
    require(samples.blocks() == 1, ErrorCode::InvalidDegrees, "clustering risk needs a single sample");
    require(samples.block(0).size() == kernel.partition().size(), ErrorCode::InvalidArgument,
            "partition length does not match the sample size");
    const IndexSpace space({samples.block(0).size()}, {2});
    return complete_u(kernel, samples, space, options).value;
}

RankingRule score_rule(std::function<double(std::span<const double>)> score) {
    return [score = std::move(score)](std::span<const double> x, std::span<const double> xp) {
        const double a = score(x);
        const double b = score(xp);
        return (a > b) - (a < b);
    };
}

bool spot_check_antisymmetry(const RankingRule& rule, const Sample& sample, std::size_t trials, Rng& rng) {
    if (sample.size() == 0) return true;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto i = rng.uniform_below(sample.size());
        const auto j = rng.uniform_below(sample.size());
        if (rule(sample.row(i), sample.row(j)) != -rule(sample.row(j), sample.row(i))) return false;
    }
    return true;
}

double RankingKernel::operator()(const SampleSet& samples, TupleRef t) const {
    const Sample& s = samples.block(0);
    require(s.has_labels(), ErrorCode::InvalidArgument, "ranking risk needs labeled data");
    const int dy = s.label(t[0]) - s.label(t[1]);
    if (dy == 0) return 0.0;
    const int r = rule_(s.row(t[0]), s.row(t[1]));
    return (dy > 0 ? r : -r) < 0 ? 1.0 : 0.0;
}

double ExcessKernel::operator()(const SampleSet& samples, TupleRef t) const {
    return rule_(samples, t) - reference_(samples, t);
}

VusKernel::VusKernel(std::function<double(std::span<const double>)> score, std::size_t samples)
    : score_(std::move(score)), k_(samples) {
    require(k_ >= 2, ErrorCode::InvalidDegrees, "VUS needs at least two samples");
}

double VusKernel::operator()(const SampleSet& samples, TupleRef t) const {
    double prev = score_(samples.block(0).row(t[0]));
    for (std::size_t k = 1; k < k_; ++k) {
        const double cur = score_(samples.block(k).row(t[k]));
        if (!(prev < cur)) return 0.0;
        prev = cur;
    }
    return 1.0;
}

}  // namespace ustat
