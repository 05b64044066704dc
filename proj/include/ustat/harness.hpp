#pragma once

// Synthetic data, agglomerative Ward clustering, dataset/partition ingestion
// and small helpers shared by the experiment pipelines.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ustat/core.hpp"
#include "ustat/learning.hpp"

namespace ustat {

// Gaussian classes whose means span a random `subspace_dim`-dimensional
// subspace of R^dim, with shared covariance variance * I.
class GaussianMixture {
public:
    // Class means are mean_scale * Q z with z ~ N(0, I) and Q an orthonormal basis.
    GaussianMixture(std::size_t dim, std::size_t classes, std::size_t subspace_dim, double variance,
                    std::uint64_t seed, double mean_scale = 1.0);

    // Balanced labels (i mod classes, then shuffled).
    Sample sample(std::size_t n, Rng& rng) const;

    const Eigen::MatrixXd& means() const noexcept { return means_; }  // classes x dim
    const Eigen::MatrixXd& basis() const noexcept { return basis_; }  // dim x subspace_dim
    std::size_t dim() const noexcept { return dim_; }
    std::size_t classes() const noexcept { return classes_; }

private:
    std::size_t dim_;
    std::size_t classes_;
    double stddev_;
    Eigen::MatrixXd basis_;
    Eigen::MatrixXd means_;
};

SampleSet generate_gaussian_mixture(std::size_t dim, std::size_t n_classes, std::size_t subspace_dim, double variance,
                                    std::size_t n, std::uint64_t seed);

// `clusters` isotropic blobs with unit-variance noise whose centers lie at
// pairwise distance >= separation inside a cube; labels are the blob ids.
Sample generate_separated_clusters(std::size_t dim, std::size_t clusters, std::size_t n, double separation,
                                   double spread, std::uint64_t seed);

// partitions[m - 1] has exactly m clusters; labels numbered by first appearance.
using NestedPartitions = std::vector<Partition>;

// Ward linkage on squared Euclidean distances, ties to the smallest index
// pair. Returns P_1 .. P_max_models (all n partitions when max_models == 0).
NestedPartitions agglomerative_ward(const Sample& sample, std::size_t max_models = 0);

SampleSet load_csv_dataset(const std::vector<std::string>& paths);

// One row per m: m-th row holds the n labels of P_m, each below m. A header
// row is required.
NestedPartitions load_partitions_csv(const std::string& path);
void write_partitions_csv(const std::string& path, const NestedPartitions& partitions);

// `count` pairs drawn uniformly with replacement from the C(n, 2) pairs.
TupleList random_pairs(std::size_t n, std::size_t count, Rng& rng);

// B = ceil(c * n^(2 / (2 - alpha))), alpha in [0, 1].
std::uint64_t fast_rate_budget(std::uint64_t n, double alpha, double c = 1.0);

// Largest n' with n'(n' - 1)/2 <= m.
std::size_t complete_subsample_size(std::uint64_t m);

}  // namespace ustat
