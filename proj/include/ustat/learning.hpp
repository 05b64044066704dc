#pragma once

// Risk kernels of the learning problems (clustering, metric learning, ranking,
// VUS), ERM over finite classes and SGD with incomplete or complete-subsample
// gradient estimates.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ustat/core.hpp"
#include "ustat/estimators.hpp"
#include "ustat/sampling.hpp"

namespace ustat {

using Distance = std::function<double(std::span<const double>, std::span<const double>)>;

double euclidean_distance(std::span<const double> a, std::span<const double> b);
double squared_euclidean_distance(std::span<const double> a, std::span<const double> b);

// ---------------------------------------------------------------- clustering

struct Partition {
    std::vector<std::uint32_t> labels;
    std::uint32_t clusters = 1;

    Partition() = default;
    Partition(std::vector<std::uint32_t> labels, std::uint32_t clusters);
    std::size_t size() const noexcept { return labels.size(); }
};

// H(x, x') = D(x, x') * 1{same cluster}.
class ClusteringKernel final : public Kernel {
public:
    ClusteringKernel(Distance distance, Partition partition);

    std::vector<std::size_t> degrees() const override { return {2}; }
    double operator()(const SampleSet& samples, TupleRef tuple) const override;
    const Partition& partition() const noexcept { return partition_; }

private:
    Distance distance_;
    Partition partition_;
};

// Within-cluster point scatter of `partition`; throws on a length mismatch.
double within_cluster_scatter(const SampleSet& samples, const ClusteringKernel& kernel,
                              const EstimatorOptions& options = {});

// ---------------------------------------------------------- metric learning

// Symmetric PSD matrix M and threshold b >= 0.
class MetricModel {
public:
    MetricModel(Eigen::MatrixXd matrix, double threshold);

    const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
    double threshold() const noexcept { return threshold_; }
    Eigen::Index dim() const noexcept { return matrix_.rows(); }

private:
    Eigen::MatrixXd matrix_;
    double threshold_;
};

// Nearest PSD matrix in Frobenius norm to the symmetric part of `m`.
Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m);

// (x - x')^T M (x - x').
double mahalanobis(const Eigen::MatrixXd& m, std::span<const double> x, std::span<const double> xp);

// H = max(0, 1 - y (b - D_M(x, x'))), y = +1 for equal labels and -1 otherwise.
// Evaluated with whatever matrix it is given, so unprojected SGD iterates work.
class MetricHingeKernel final : public Kernel {
public:
    explicit MetricHingeKernel(const MetricModel& model);
    MetricHingeKernel(Eigen::MatrixXd matrix, double threshold);

    std::vector<std::size_t> degrees() const override { return {2}; }
    double operator()(const SampleSet& samples, TupleRef tuple) const override;

private:
    Eigen::MatrixXd matrix_;
    double threshold_;
};

struct LabeledPoint {
    std::span<const double> x;
    int label = 0;
};

// dH/dM: y (x - x')(x - x')^T when the hinge is strictly active, zero otherwise.
Eigen::MatrixXd metric_hinge_gradient(const Eigen::MatrixXd& matrix, double threshold, LabeledPoint a,
                                      LabeledPoint b);
inline Eigen::MatrixXd metric_hinge_gradient(const MetricModel& model, LabeledPoint a, LabeledPoint b) {
    return metric_hinge_gradient(model.matrix(), model.threshold(), a, b);
}

// Differences and pair labels of a fixed list of pairs, for batched evaluation.
struct PairBatch {
    Eigen::MatrixXd delta;  // one row x_i - x_j per pair
    Eigen::VectorXd y;      // +1 same label, -1 otherwise

    static PairBatch build(const Sample& sample, const TupleList& pairs);
    Eigen::Index size() const noexcept { return delta.rows(); }
};

// Sum over the batch of hinge losses, and of their gradients.
double hinge_loss_sum(const PairBatch& batch, const Eigen::MatrixXd& matrix, double threshold);
Eigen::MatrixXd hinge_gradient_sum(const PairBatch& batch, const Eigen::MatrixXd& matrix, double threshold);

// ------------------------------------------------------------------ ranking

// Antisymmetric decision r(x, x') in {-1, 0, +1}: +1 means x ranks above x'.
using RankingRule = std::function<int(std::span<const double>, std::span<const double>)>;

// r(x, x') = sign(s(x) - s(x')).
RankingRule score_rule(std::function<double(std::span<const double>)> score);

// Checks r(x, x') = -r(x', x) on `trials` random pairs of rows.
bool spot_check_antisymmetry(const RankingRule& rule, const Sample& sample, std::size_t trials, Rng& rng);

// H_r = 1{(y - y') r(x, x') < 0}.
class RankingKernel final : public Kernel {
public:
    explicit RankingKernel(RankingRule rule) : rule_(std::move(rule)) {}

    std::vector<std::size_t> degrees() const override { return {2}; }
    double operator()(const SampleSet& samples, TupleRef tuple) const override;
    std::optional<double> bound() const override { return 1.0; }

private:
    RankingRule rule_;
};

// q_r = H_r - H_ref.
class ExcessKernel final : public Kernel {
public:
    ExcessKernel(RankingRule rule, RankingRule reference)
        : rule_(std::move(rule)), reference_(std::move(reference)) {}

    std::vector<std::size_t> degrees() const override { return {2}; }
    double operator()(const SampleSet& samples, TupleRef tuple) const override;
    std::optional<double> bound() const override { return 1.0; }

private:
    RankingKernel rule_;
    RankingKernel reference_;
};

// 1{s(x_1) < s(x_2) < ... < s(x_K)}, one observation per sample.
class VusKernel final : public Kernel {
public:
    VusKernel(std::function<double(std::span<const double>)> score, std::size_t samples);

    std::vector<std::size_t> degrees() const override { return std::vector<std::size_t>(k_, 1); }
    double operator()(const SampleSet& samples, TupleRef tuple) const override;
    std::optional<double> bound() const override { return 1.0; }

private:
    std::function<double(std::span<const double>)> score_;
    std::size_t k_;
};

// ---------------------------------------------------------------------- ERM

struct RiskEstimator {
    enum class Kind { Complete, Incomplete };
    Kind kind = Kind::Complete;
    Scheme scheme = Scheme::WithReplacement;
    std::uint64_t b = 1;
    std::uint64_t seed = 0;

    static RiskEstimator complete() { return {}; }
    static RiskEstimator incomplete(Scheme scheme, std::uint64_t b, std::uint64_t seed) {
        return {Kind::Incomplete, scheme, b, seed};
    }
};

struct ErmResult {
    std::size_t best = 0;
    std::vector<double> risks;
};

// Evaluates every kernel with the same estimator (one shared term set for the
// incomplete case; Bernoulli designs use Horvitz-Thompson) and returns the
// argmin, ties to the smallest index.
ErmResult erm_finite_class(std::span<const Kernel* const> kernels, const SampleSet& samples,
                           const RiskEstimator& estimator, const EstimatorOptions& options = {});

// -------------------------------------------------------------------- SGD

// A kernel family theta -> H_theta with gradients, evaluated in batches of
// terms. Parameters are a flat vector.
class DifferentiableObjective {
public:
    virtual ~DifferentiableObjective() = default;
    virtual std::vector<std::size_t> degrees() const = 0;
    virtual Eigen::Index parameter_size() const = 0;
    virtual double loss_sum(const Eigen::VectorXd& theta, const SampleSet& samples, const TupleList& terms) const = 0;
    // Adds the summed gradient over `terms` into `out`.
    virtual void add_gradient_sum(const Eigen::VectorXd& theta, const SampleSet& samples, const TupleList& terms,
                                  Eigen::VectorXd& out) const = 0;
    virtual void project(Eigen::VectorXd&) const {}
};

// Metric hinge loss with theta = vec(M) (column-major p x p); projection onto
// the PSD cone.
class MetricHingeObjective final : public DifferentiableObjective {
public:
    MetricHingeObjective(Eigen::Index dim, double threshold) : dim_(dim), threshold_(threshold) {}

    std::vector<std::size_t> degrees() const override { return {2}; }
    Eigen::Index parameter_size() const override { return dim_ * dim_; }
    double loss_sum(const Eigen::VectorXd& theta, const SampleSet& samples, const TupleList& terms) const override;
    void add_gradient_sum(const Eigen::VectorXd& theta, const SampleSet& samples, const TupleList& terms,
                          Eigen::VectorXd& out) const override;
    void project(Eigen::VectorXd& theta) const override;

    Eigen::MatrixXd as_matrix(const Eigen::VectorXd& theta) const;
    Eigen::VectorXd as_vector(const Eigen::MatrixXd& m) const;
    double threshold() const noexcept { return threshold_; }

private:
    Eigen::Index dim_;
    double threshold_;
};

enum class GradientMode { Incomplete, CompleteSubsample, Full };
enum class ProjectionPolicy { EveryStep, FinalOnly };

struct SgdConfig {
    std::size_t steps = 100;
    double eta0 = 1.0;  // eta_t = 1 / (eta0 * t)
    GradientMode mode = GradientMode::Incomplete;
    std::uint64_t b = 0;                       // Incomplete: with-replacement draws per step
    std::vector<std::size_t> subsample_sizes;  // CompleteSubsample: n'_k per block
    ProjectionPolicy projection = ProjectionPolicy::FinalOnly;
    std::uint64_t seed = 0;
    std::size_t record_every = 0;  // 0: no intermediate records

    void validate(const IndexSpace& space) const;
};

struct SgdRecord {
    std::size_t t = 0;
    double gradient_norm = 0.0;
    std::optional<double> risk;
};

struct SgdResult {
    Eigen::VectorXd theta;
    std::vector<SgdRecord> trajectory;
};

// Optional risk evaluation at recorded steps (and at t = 0 and the end).
using RiskProbe = std::function<double(const Eigen::VectorXd&)>;

// One gradient estimate at theta, averaged over the drawn terms.
Eigen::VectorXd estimate_gradient(const DifferentiableObjective& objective, const SampleSet& samples,
                                  const Eigen::VectorXd& theta, const SgdConfig& config, Rng& rng);

// Terms used by one gradient estimate: B with-replacement tuples, or all
// tuples among a fresh uniform without-replacement subsample of each block.
TupleList draw_gradient_terms(const IndexSpace& space, const SgdConfig& config, Rng& rng);

SgdResult sgd(const DifferentiableObjective& objective, const SampleSet& samples, const SgdConfig& config,
              Eigen::VectorXd theta0, const RiskProbe& probe = {});

}  // namespace ustat
