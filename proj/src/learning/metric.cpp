#include <Eigen/Eigenvalues>

#include "ustat/learning.hpp"

namespace ustat {

namespace {

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) {
    require(m.rows() == m.cols(), ErrorCode::InvalidArgument, "matrix must be square");
    return 0.5 * (m + m.transpose());
}

double pair_sign(int a, int b) { return a == b ? 1.0 : -1.0; }

}  // namespace

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m) {
    Eigen::MatrixXd s = symmetrized(m);
    if (s.size() == 0) return s;
    Eigen::LLT<Eigen::MatrixXd> llt(s);
    if (llt.info() == Eigen::Success) return s;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
    require(eig.info() == Eigen::Success, ErrorCode::InvalidArgument, "eigendecomposition failed");
    const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
    Eigen::MatrixXd out = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
    return 0.5 * (out + out.transpose());
}

MetricModel::MetricModel(Eigen::MatrixXd matrix, double threshold)
    : matrix_(project_psd(matrix)), threshold_(threshold) {
    require(threshold_ >= 0.0, ErrorCode::InvalidArgument, "metric threshold b must be >= 0");
}

double mahalanobis(const Eigen::MatrixXd& m, std::span<const double> x, std::span<const double> xp) {
    require(static_cast<Eigen::Index>(x.size()) == m.rows() && x.size() == xp.size(), ErrorCode::InvalidArgument,
            "metric dimension does not match the data");
    Eigen::VectorXd d(m.rows());
    for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = x[i] - xp[i];
    return d.dot(m * d);
}

MetricHingeKernel::MetricHingeKernel(const MetricModel& model)
    : matrix_(model.matrix()), threshold_(model.threshold()) {}

MetricHingeKernel::MetricHingeKernel(Eigen::MatrixXd matrix, double threshold)
    : matrix_(symmetrized(matrix)), threshold_(threshold) {}

double MetricHingeKernel::operator()(const SampleSet& samples, TupleRef t) const {
    const Sample& s = samples.block(0);
    require(s.has_labels(), ErrorCode::InvalidArgument, "metric hinge loss needs labeled data");
    const double y = pair_sign(s.label(t[0]), s.label(t[1]));
    const double dm = mahalanobis(matrix_, s.row(t[0]), s.row(t[1]));
    return std::max(0.0, 1.0 - y * (threshold_ - dm));
}

Eigen::MatrixXd metric_hinge_gradient(const Eigen::MatrixXd& matrix, double threshold, LabeledPoint a,
                                      LabeledPoint b) {
    const Eigen::Index p = matrix.rows();
    require(static_cast<Eigen::Index>(a.x.size()) == p && a.x.size() == b.x.size(), ErrorCode::InvalidArgument,
            "metric dimension does not match the data");
    Eigen::VectorXd d(p);
    for (Eigen::Index i = 0; i < p; ++i) d[i] = a.x[i] - b.x[i];
    const double y = pair_sign(a.label, b.label);
    const double u = 1.0 - y * (threshold - d.dot(matrix * d));
    if (u <= 0.0) return Eigen::MatrixXd::Zero(p, p);
    return y * d * d.transpose();
}

PairBatch PairBatch::build(const Sample& sample, const TupleList& pairs) {
    require(pairs.width() == 2, ErrorCode::InvalidDegrees, "pair batches need degree-2 tuples");
    require(sample.has_labels(), ErrorCode::InvalidArgument, "pair batches need labeled data");
    PairBatch batch;
    const auto n = static_cast<Eigen::Index>(pairs.size());
    const auto p = static_cast<Eigen::Index>(sample.dim());
    batch.delta.resize(n, p);
    batch.y.resize(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const TupleRef t = pairs[static_cast<std::size_t>(r)];
        const auto xi = sample.row(t[0]);
        const auto xj = sample.row(t[1]);
        for (Eigen::Index c = 0; c < p; ++c) batch.delta(r, c) = xi[c] - xj[c];
        batch.y[r] = pair_sign(sample.label(t[0]), sample.label(t[1]));
    }
    return batch;
}

namespace {

Eigen::ArrayXd hinge_arguments(const PairBatch& batch, const Eigen::MatrixXd& matrix, double threshold) {
    require(batch.delta.cols() == matrix.rows(), ErrorCode::InvalidArgument,
            "metric dimension does not match the data");
    const Eigen::ArrayXd dm = ((batch.delta * matrix).array() * batch.delta.array()).rowwise().sum();
    return 1.0 - batch.y.array() * (threshold - dm);
}

}  // namespace

double hinge_loss_sum(const PairBatch& batch, const Eigen::MatrixXd& matrix, double threshold) {
    if (batch.size() == 0) return 0.0;
    return hinge_arguments(batch, matrix, threshold).max(0.0).sum();
}

Eigen::MatrixXd hinge_gradient_sum(const PairBatch& batch, const Eigen::MatrixXd& matrix, double threshold) {
    if (batch.size() == 0) return Eigen::MatrixXd::Zero(matrix.rows(), matrix.cols());
    const Eigen::ArrayXd u = hinge_arguments(batch, matrix, threshold);
    const Eigen::VectorXd w = (u > 0.0).select(batch.y.array(), 0.0).matrix();
    const Eigen::MatrixXd weighted = batch.delta.array().colwise() * w.array();
    return weighted.transpose() * batch.delta;
}

Eigen::MatrixXd MetricHingeObjective::as_matrix(const Eigen::VectorXd& theta) const {
    return Eigen::Map<const Eigen::MatrixXd>(theta.data(), dim_, dim_);
}

Eigen::VectorXd MetricHingeObjective::as_vector(const Eigen::MatrixXd& m) const {
    return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

double MetricHingeObjective::loss_sum(const Eigen::VectorXd& theta, const SampleSet& samples,
                                      const TupleList& terms) const {
    return hinge_loss_sum(PairBatch::build(samples.block(0), terms), as_matrix(theta), threshold_);
}

void MetricHingeObjective::add_gradient_sum(const Eigen::VectorXd& theta, const SampleSet& samples,
                                            const TupleList& terms, Eigen::VectorXd& out) const {
    const Eigen::MatrixXd g = hinge_gradient_sum(PairBatch::build(samples.block(0), terms), as_matrix(theta), threshold_);
    out += as_vector(g);
}

void MetricHingeObjective::project(Eigen::VectorXd& theta) const { theta = as_vector(project_psd(as_matrix(theta))); }

}  // namespace ustat
