#include <algorithm>
#include <cmath>
#include <numeric>

#include "ustat/harness.hpp"

namespace ustat {

namespace {

std::vector<int> balanced_labels(std::size_t n, std::size_t classes, Rng& rng) {
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % classes);
    for (std::size_t i = n; i > 1; --i) std::swap(labels[i - 1], labels[rng.uniform_below(i)]);
    return labels;
}

}  // namespace

GaussianMixture::GaussianMixture(std::size_t dim, std::size_t classes, std::size_t subspace_dim, double variance,
                                 std::uint64_t seed, double mean_scale)
    : dim_(dim), classes_(classes) {
    require(dim >= 1 && classes >= 1, ErrorCode::InvalidArgument, "mixture needs dim >= 1 and at least one class");
    require(subspace_dim >= 1 && subspace_dim <= dim, ErrorCode::InvalidArgument,
            "subspace dimension must lie in [1, dim]");
    require(variance >= 0.0, ErrorCode::InvalidArgument, "variance must be >= 0");
    stddev_ = std::sqrt(variance);

    Rng rng = Rng(seed).split(0);
    Eigen::MatrixXd g(dim, dim);
    for (Eigen::Index c = 0; c < g.cols(); ++c)
        for (Eigen::Index r = 0; r < g.rows(); ++r) g(r, c) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    basis_ = qr.householderQ() * Eigen::MatrixXd::Identity(dim, subspace_dim);

    Eigen::MatrixXd z(classes, subspace_dim);
    for (Eigen::Index c = 0; c < z.cols(); ++c)
        for (Eigen::Index r = 0; r < z.rows(); ++r) z(r, c) = rng.normal();
    means_ = mean_scale * z * basis_.transpose();
}

Sample GaussianMixture::sample(std::size_t n, Rng& rng) const {
    require(n >= 1, ErrorCode::InvalidArgument, "sample size must be >= 1");
    std::vector<int> labels = balanced_labels(n, classes_, rng);
    std::vector<double> values(n * dim_);
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<Eigen::Index>(labels[i]);
        for (std::size_t j = 0; j < dim_; ++j) {
            const double noise = stddev_ > 0.0 ? stddev_ * rng.normal() : 0.0;
            values[i * dim_ + j] = means_(c, static_cast<Eigen::Index>(j)) + noise;
        }
    }
    return Sample(dim_, std::move(values), std::move(labels));
}

SampleSet generate_gaussian_mixture(std::size_t dim, std::size_t n_classes, std::size_t subspace_dim, double variance,
                                    std::size_t n, std::uint64_t seed) {
    GaussianMixture mixture(dim, n_classes, subspace_dim, variance, seed);
    Rng rng = Rng(seed).split(1);
    return SampleSet(mixture.sample(n, rng));
}

Sample generate_separated_clusters(std::size_t dim, std::size_t clusters, std::size_t n, double separation,
                                   double spread, std::uint64_t seed) {
    require(dim >= 1 && clusters >= 1 && n >= clusters, ErrorCode::InvalidArgument,
            "cluster generator needs dim >= 1 and n >= clusters >= 1");
    require(separation >= 0.0 && spread >= 0.0, ErrorCode::InvalidArgument, "separation and spread must be >= 0");
    Rng rng = Rng(seed).split(0);
    const double side = 2.0 * separation * std::pow(static_cast<double>(clusters), 1.0 / static_cast<double>(dim));
    std::vector<std::vector<double>> centers;
    for (std::size_t attempt = 0; centers.size() < clusters; ++attempt) {
        require(attempt < 1'000'000, ErrorCode::InvalidArgument, "could not place well-separated cluster centers");
        std::vector<double> c(dim);
        for (auto& v : c) v = side * rng.uniform01();
        const bool ok = std::all_of(centers.begin(), centers.end(),
                                    [&](const auto& o) { return euclidean_distance(c, o) >= separation; });
        if (ok) centers.push_back(std::move(c));
    }
    Rng draw = Rng(seed).split(1);
    std::vector<int> labels = balanced_labels(n, clusters, draw);
    std::vector<double> values(n * dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < dim; ++j) values[i * dim + j] = centers[labels[i]][j] + spread * draw.normal();
    return Sample(dim, std::move(values), std::move(labels));
}

TupleList random_pairs(std::size_t n, std::size_t count, Rng& rng) {
    const IndexSpace space({n}, {2});
    return sample_with_replacement(space, count, rng).terms();
}

std::uint64_t fast_rate_budget(std::uint64_t n, double alpha, double c) {
    require(alpha >= 0.0 && alpha <= 1.0, ErrorCode::InvalidArgument, "alpha must lie in [0, 1]");
    require(c > 0.0 && n >= 1, ErrorCode::InvalidArgument, "budget constant and n must be positive");
    return static_cast<std::uint64_t>(std::ceil(c * std::pow(static_cast<double>(n), 2.0 / (2.0 - alpha))));
}

std::size_t complete_subsample_size(std::uint64_t m) {
    require(m >= 1, ErrorCode::InvalidArgument, "mini-batch size must be >= 1");
    std::size_t p = 2;
    while (static_cast<std::uint64_t>(p + 1) * p / 2 <= m) ++p;
    return p;
}

}  // namespace ustat
