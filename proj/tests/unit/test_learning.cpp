#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "ustat/learning.hpp"

using namespace ustat;
using namespace ustat::testing;

namespace {

double first(std::span<const double> x) { return x[0]; }

Eigen::MatrixXd random_matrix(Eigen::Index p, Rng& rng) {
    Eigen::MatrixXd m(p, p);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal();
    return m;
}

Eigen::MatrixXd random_gram(Eigen::Index p, Eigen::Index rank, Rng& rng) {
    const Eigen::MatrixXd a = random_matrix(p, rng).leftCols(rank);
    return a * a.transpose();
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff();
}

// H = 0.5 * |theta - (x + x')/2|^2; its full-gradient loss is 1-smooth.
class QuadraticObjective final : public DifferentiableObjective {
public:
    explicit QuadraticObjective(Eigen::Index dim) : dim_(dim) {}
    std::vector<std::size_t> degrees() const override { return {2}; }
    Eigen::Index parameter_size() const override { return dim_; }
    double loss_sum(const Eigen::VectorXd& theta, const SampleSet& s, const TupleList& terms) const override {
        double total = 0.0;
        for (std::size_t i = 0; i < terms.size(); ++i) total += 0.5 * (theta - mid(s, terms[i])).squaredNorm();
        return total;
    }
    void add_gradient_sum(const Eigen::VectorXd& theta, const SampleSet& s, const TupleList& terms,
                          Eigen::VectorXd& out) const override {
        for (std::size_t i = 0; i < terms.size(); ++i) out += theta - mid(s, terms[i]);
    }

private:
    Eigen::VectorXd mid(const SampleSet& s, TupleRef t) const {
        const auto a = s.block(0).row(t[0]), b = s.block(0).row(t[1]);
        Eigen::VectorXd m(dim_);
        for (Eigen::Index j = 0; j < dim_; ++j) m[j] = 0.5 * (a[j] + b[j]);
        return m;
    }
    Eigen::Index dim_;
};

class FlatObjective final : public DifferentiableObjective {
public:
    std::vector<std::size_t> degrees() const override { return {2}; }
    Eigen::Index parameter_size() const override { return 3; }
    double loss_sum(const Eigen::VectorXd&, const SampleSet&, const TupleList&) const override { return 0.0; }
    void add_gradient_sum(const Eigen::VectorXd&, const SampleSet&, const TupleList&, Eigen::VectorXd&) const override {}
};

SampleSet labeled_cloud(std::size_t n, std::size_t dim, Rng& rng) { return random_samples({n}, dim, rng, true, 3); }

// Per-entry mean and summed variance of repeated gradient draws.
struct Moments {
    Eigen::VectorXd mean;
    Eigen::VectorXd var;
};

Moments gradient_moments(const DifferentiableObjective& obj, const SampleSet& data, const Eigen::VectorXd& theta,
                         const SgdConfig& cfg, std::size_t draws, Rng& rng) {
    const Eigen::Index p = obj.parameter_size();
    Eigen::VectorXd s1 = Eigen::VectorXd::Zero(p), s2 = Eigen::VectorXd::Zero(p);
    for (std::size_t i = 0; i < draws; ++i) {
        const Eigen::VectorXd g = estimate_gradient(obj, data, theta, cfg, rng);
        s1 += g;
        s2 += g.cwiseProduct(g);
    }
    const double r = static_cast<double>(draws);
    Moments m;
    m.mean = s1 / r;
    m.var = (s2 / r - m.mean.cwiseProduct(m.mean)) * r / (r - 1);
    return m;
}

}  // namespace

TEST_CASE("clustering kernel examples") {
    const SampleSet line(column({0, 1, 10, 11}));
    const ClusteringKernel two(euclidean_distance, Partition({0, 0, 1, 1}, 2));
    CHECK(within_cluster_scatter(line, two) == doctest::Approx(1.0 / 3.0));

    const ClusteringKernel singletons(euclidean_distance, Partition({0, 1, 2, 3}, 4));
    CHECK(within_cluster_scatter(line, singletons) == 0.0);

    const ClusteringKernel one(euclidean_distance, Partition({0, 0, 0, 0}, 1));
    CHECK(within_cluster_scatter(line, one) == doctest::Approx((1 + 10 + 11 + 9 + 10 + 1) / 6.0));

    const ClusteringKernel short_partition(euclidean_distance, Partition({0, 0, 1}, 2));
    CHECK_THROWS_AS(within_cluster_scatter(line, short_partition), Error);
    CHECK_THROWS_AS(Partition({0, 2}, 2), Error);
    CHECK_NOTHROW(Partition({0, 0}, 5));
}

TEST_CASE("clustering kernel is symmetric and nonnegative") {
    Rng rng(1);
    const SampleSet data = random_samples({30}, 3, rng);
    std::vector<std::uint32_t> labels(30);
    for (auto& l : labels) l = static_cast<std::uint32_t>(rng.uniform_below(4));
    const ClusteringKernel k(euclidean_distance, Partition(labels, 4));
    CHECK(check_block_symmetry(k, data, 300, rng));
    CHECK(within_cluster_scatter(data, k) >= 0.0);
}

TEST_CASE("psd projection") {
    CHECK(project_psd(Eigen::MatrixXd::Identity(4, 4)).isApprox(Eigen::MatrixXd::Identity(4, 4)));
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
    d(0, 0) = 1;
    d(1, 1) = -2;
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(2, 2);
    expected(0, 0) = 1;
    CHECK((project_psd(d) - expected).norm() <= 1e-14);

    Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::MatrixXd g = random_gram(6, 1 + static_cast<Eigen::Index>(rng.uniform_below(6)), rng);
        CHECK((project_psd(g) - g).norm() <= 1e-10 * std::max(1.0, g.norm()));

        const Eigen::MatrixXd m = random_matrix(6, rng);
        const Eigen::MatrixXd p = project_psd(m);
        CHECK(p == p.transpose());
        CHECK(min_eigenvalue(p) >= -1e-10);
        CHECK((project_psd(p) - p).norm() <= 1e-12 * std::max(1.0, p.norm()));
        const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
        for (int c = 0; c < 20; ++c) {
            const Eigen::MatrixXd candidate = random_gram(6, 1 + static_cast<Eigen::Index>(rng.uniform_below(6)), rng) * rng.uniform01();
            CHECK((sym - p).norm() <= (sym - candidate).norm() + 1e-12);
        }
    }
}

TEST_CASE("metric model") {
    Eigen::MatrixXd m(2, 2);
    m << 2, 1, 0, 3;
    const MetricModel model(m, 1.0);
    CHECK(model.matrix() == model.matrix().transpose());
    CHECK(model.matrix()(0, 1) == 0.5);
    CHECK_THROWS_AS(MetricModel(m, -0.1), Error);
    CHECK_THROWS_AS(MetricModel(Eigen::MatrixXd::Zero(2, 3), 0.0), Error);
    const std::vector<double> x{1, 2}, y{0, 0};
    CHECK(mahalanobis(model.matrix(), x, y) == doctest::Approx(2 + 2 * 0.5 * 2 + 3 * 4));
}

TEST_CASE("metric hinge kernel examples") {
    const IndexSpace space({2}, {2});
    TupleList pair(space);
    pair.push_back(IndexTuple{{{0, 1}}});

    const SampleSet same(Sample(2, {1, 1, 1, 1}, {3, 3}));
    CHECK(MetricHingeKernel(Eigen::MatrixXd::Identity(2, 2), 2.0)(same, pair[0]) == 0.0);

    // D_M = 2 = b for a different-class pair: hinge argument 0, loss 1.
    const SampleSet diff(Sample(2, {0, 0, 1, 1}, {0, 1}));
    CHECK(MetricHingeKernel(Eigen::MatrixXd::Identity(2, 2), 2.0)(diff, pair[0]) == 1.0);

    Rng rng(3);
    const SampleSet data = labeled_cloud(20, 3, rng);
    const MetricHingeKernel zero(Eigen::MatrixXd::Zero(3, 3), 0.0);
    CHECK(complete_u(zero, data, IndexSpace({20}, {2})).value == 1.0);

    const SampleSet unlabeled = random_samples({4}, 3, rng);
    CHECK_THROWS_AS(zero(unlabeled, pair[0]), Error);
}

TEST_CASE("metric hinge gradient examples") {
    const std::vector<double> a{1, 0}, b{0, 2};
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
    // Same class, D = 5 > b - 1: active; gradient is +delta delta^T.
    Eigen::MatrixXd g = metric_hinge_gradient(id, 2.0, {a, 1}, {b, 1});
    Eigen::MatrixXd outer(2, 2);
    outer << 1, -2, -2, 4;
    CHECK((g - outer).norm() == 0.0);
    // Different class, D = 5 > b + 1: inactive.
    CHECK(metric_hinge_gradient(id, 2.0, {a, 0}, {b, 1}).norm() == 0.0);
    // Different class, D = 5 < b + 1 = 7: active with the negative sign.
    CHECK((metric_hinge_gradient(id, 6.0, {a, 0}, {b, 1}) + outer).norm() == 0.0);
    // Kink: u = 0 exactly gives the zero subgradient.
    CHECK(metric_hinge_gradient(id, 6.0, {a, 1}, {b, 1}).norm() == 0.0);
}

TEST_CASE("metric hinge gradient matches finite differences") {
    Rng rng(4);
    const double h = 1e-5;
    int checked = 0;
    while (checked < 100) {
        const Eigen::Index p = 4;
        const Eigen::MatrixXd m = random_matrix(p, rng);
        const double b = 3.0 * rng.uniform01();
        std::vector<double> x(p), y(p);
        for (auto& v : x) v = rng.normal();
        for (auto& v : y) v = rng.normal();
        const int lx = static_cast<int>(rng.uniform_below(2)), ly = static_cast<int>(rng.uniform_below(2));
        const double sign = lx == ly ? 1.0 : -1.0;
        const double u = 1.0 - sign * (b - mahalanobis(m, x, y));
        if (std::abs(u) < 1e-3) continue;
        ++checked;
        auto loss = [&](const Eigen::MatrixXd& mm) {
            return std::max(0.0, 1.0 - sign * (b - mahalanobis(mm, x, y)));
        };
        Eigen::MatrixXd fd(p, p);
        for (Eigen::Index i = 0; i < p; ++i) {
            for (Eigen::Index j = 0; j < p; ++j) {
                Eigen::MatrixXd plus = m, minus = m;
                plus(i, j) += h;
                minus(i, j) -= h;
                fd(i, j) = (loss(plus) - loss(minus)) / (2 * h);
            }
        }
        const Eigen::MatrixXd g = metric_hinge_gradient(m, b, {x, lx}, {y, ly});
        if (u < 0) {
            CHECK(g.norm() == 0.0);
            CHECK(fd.norm() == 0.0);
        } else {
            CHECK((g - fd).norm() <= 1e-4 * g.norm());
        }
    }
}

TEST_CASE("batched hinge sums agree with the kernel") {
    Rng rng(5);
    const SampleSet data = labeled_cloud(25, 4, rng);
    const IndexSpace space({25}, {2});
    const TermSet terms = sample_with_replacement(space, 200, rng);
    const Eigen::MatrixXd m = random_matrix(4, rng);
    const PairBatch batch = PairBatch::build(data.block(0), terms.terms());
    REQUIRE(batch.size() == 200);

    const MetricHingeKernel k(m, 1.5);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(4, 4);
    double loss = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        loss += k(data, terms[i]);
        const auto t = terms[i];
        g += metric_hinge_gradient(m, 1.5, {data.block(0).row(t[0]), data.block(0).label(t[0])},
                                   {data.block(0).row(t[1]), data.block(0).label(t[1])});
    }
    CHECK(hinge_loss_sum(batch, m, 1.5) == doctest::Approx(loss).epsilon(1e-12));
    CHECK((hinge_gradient_sum(batch, m, 1.5) - g).norm() <= 1e-10 * std::max(1.0, g.norm()));

    const MetricHingeObjective obj(4, 1.5);
    CHECK(obj.loss_sum(obj.as_vector(m), data, terms.terms()) == doctest::Approx(loss).epsilon(1e-12));
    Eigen::VectorXd gv = Eigen::VectorXd::Zero(16);
    obj.add_gradient_sum(obj.as_vector(m), data, terms.terms(), gv);
    CHECK((obj.as_matrix(gv) - g).norm() <= 1e-10 * std::max(1.0, g.norm()));
    CHECK(obj.as_matrix(obj.as_vector(m)) == m);
}

TEST_CASE("ranking kernels") {
    const Sample s(1, {0.1, 0.4, 0.5, 0.7, 0.9}, {0, 0, 1, 1, 2});
    const SampleSet data(s);
    const IndexSpace space({5}, {2});
    const RankingRule perfect = score_rule(first);
    const RankingRule reversed = score_rule([](std::span<const double> x) { return -x[0]; });
    CHECK(complete_u(RankingKernel(perfect), data, space).value == 0.0);
    // Label-distinct pairs: 10 - 1 (0,0) - 1 (1,1) = 8 of 10.
    CHECK(complete_u(RankingKernel(reversed), data, space).value == doctest::Approx(0.8));
    CHECK(complete_u(ExcessKernel(perfect, perfect), data, space).value == 0.0);
    CHECK(complete_u(ExcessKernel(reversed, perfect), data, space).value == doctest::Approx(0.8));

    Rng rng(6);
    CHECK(spot_check_antisymmetry(perfect, s, 100, rng));
    const RankingRule broken = [](std::span<const double>, std::span<const double>) { return 1; };
    CHECK(!spot_check_antisymmetry(broken, s, 100, rng));
    CHECK_THROWS_AS(complete_u(RankingKernel(perfect), SampleSet(column({1, 2})), IndexSpace({2}, {2})), Error);
}

TEST_CASE("vus kernel") {
    const SampleSet ordered(std::vector<Sample>{column({0, 1}), column({2, 3}), column({4, 5})});
    const IndexSpace space({2, 2, 2}, {1, 1, 1});
    CHECK(complete_u(VusKernel(first, 3), ordered, space).value == 1.0);
    CHECK(complete_u(VusKernel([](std::span<const double>) { return 1.0; }, 3), ordered, space).value == 0.0);

    const SampleSet broken(std::vector<Sample>{column({0.1}), column({0.5}), column({0.3})});
    CHECK(complete_u(VusKernel(first, 3), broken, IndexSpace({1, 1, 1}, {1, 1, 1})).value == 0.0);

    const SampleSet tied(std::vector<Sample>{column({1}), column({1})});
    CHECK(complete_u(VusKernel(first, 2), tied, IndexSpace({1, 1}, {1, 1})).value == 0.0);
    CHECK_THROWS_AS(VusKernel(first, 1), Error);
}

TEST_CASE("risks stay in range on random inputs") {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const SampleSet three = random_samples({5, 4, 6}, 2, rng);
        const double vus =
            complete_u(VusKernel([](std::span<const double> x) { return x[0] + x[1]; }, 3), three, IndexSpace({5, 4, 6}, {1, 1, 1})).value;
        CHECK((vus >= 0.0 && vus <= 1.0));

        const SampleSet data = labeled_cloud(15, 2, rng);
        const IndexSpace space({15}, {2});
        const double w = rng.normal();
        const double rank =
            complete_u(RankingKernel(score_rule([w](std::span<const double> x) { return x[0] + w * x[1]; })), data, space).value;
        CHECK((rank >= 0.0 && rank <= 1.0));
        CHECK(complete_u(MetricHingeKernel(random_matrix(2, rng), 1.0), data, space).value >= 0.0);
    }
}

TEST_CASE("erm over finite classes") {
    Rng rng(8);
    const SampleSet data = random_samples({12}, 1, rng);
    const FunctionKernel a({2}, [](const SampleSet&, TupleRef) { return 0.1; });
    const FunctionKernel b({2}, [](const SampleSet&, TupleRef) { return 0.2; });
    const Kernel* consts[] = {&a, &b};
    for (const RiskEstimator& est : {RiskEstimator::complete(), RiskEstimator::incomplete(Scheme::WithReplacement, 5, 1),
                                     RiskEstimator::incomplete(Scheme::WithoutReplacement, 5, 1),
                                     RiskEstimator::incomplete(Scheme::Bernoulli, 30, 1)}) {
        CHECK(erm_finite_class(consts, data, est).best == 0);
    }
    const Kernel* twice[] = {&a, &a};
    CHECK(erm_finite_class(twice, data, RiskEstimator::complete()).best == 0);
    CHECK_THROWS_AS(erm_finite_class(std::span<const Kernel* const>{}, data, RiskEstimator::complete()), Error);

    const SampleSet labeled = labeled_cloud(12, 1, rng);
    std::vector<RankingKernel> rankers;
    for (int j = 0; j < 8; ++j)
        rankers.emplace_back(score_rule([j](std::span<const double> x) { return std::sin(j * x[0]) + 0.1 * j * x[0]; }));
    std::vector<const Kernel*> cls;
    for (const auto& r : rankers) cls.push_back(&r);
    const ErmResult full = erm_finite_class(cls, labeled, RiskEstimator::complete());
    const ErmResult wor = erm_finite_class(cls, labeled, RiskEstimator::incomplete(Scheme::WithoutReplacement, 66, 3));
    CHECK(full.best == wor.best);
    for (std::size_t i = 0; i < cls.size(); ++i) CHECK(relative_error(wor.risks[i], full.risks[i]) <= 1e-12);
}

TEST_CASE("erm with threshold rankers tracks the complete selection") {
    const std::size_t n = 200;
    std::vector<RankingKernel> rankers;
    for (int j = 1; j <= 32; ++j) {
        const double t = j / 32.0;
        rankers.emplace_back(score_rule([t](std::span<const double> x) { return (x[0] > t ? 1.0 : 0.0) - 0.5 * x[0]; }));
    }
    std::vector<const Kernel*> cls;
    for (const auto& r : rankers) cls.push_back(&r);
    int agree = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng = Rng(500).split(seed);
        std::vector<double> x(n);
        std::vector<int> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.uniform01();
            y[i] = x[i] > 0.5 ? 1 : 0;
        }
        const SampleSet data(column(x, y));
        const std::size_t c = erm_finite_class(cls, data, RiskEstimator::complete()).best;
        const std::size_t i = erm_finite_class(cls, data, RiskEstimator::incomplete(Scheme::WithReplacement, n, seed)).best;
        agree += c == i;
    }
    CHECK(agree >= 95);
}

TEST_CASE("sgd configuration checks") {
    Rng rng(9);
    const SampleSet data = labeled_cloud(10, 2, rng);
    const MetricHingeObjective obj(2, 2.0);
    const Eigen::VectorXd theta0 = Eigen::VectorXd::Zero(4);
    SgdConfig cfg;
    cfg.mode = GradientMode::Incomplete;
    cfg.b = 0;
    CHECK_THROWS_AS(sgd(obj, data, cfg, theta0), Error);
    cfg.mode = GradientMode::CompleteSubsample;
    cfg.subsample_sizes = {1};
    CHECK_THROWS_AS(sgd(obj, data, cfg, theta0), Error);
    cfg.subsample_sizes = {4};
    cfg.b = 6;
    CHECK_THROWS_AS(sgd(obj, data, cfg, theta0), Error);
    cfg.b = 0;
    cfg.subsample_sizes = {11};
    CHECK_THROWS_AS(sgd(obj, data, cfg, theta0), Error);
    cfg.subsample_sizes = {4};
    CHECK_NOTHROW(sgd(obj, data, cfg, theta0));
    CHECK_THROWS_AS(sgd(obj, data, cfg, Eigen::VectorXd::Zero(3)), Error);
    cfg.eta0 = 0.0;
    CHECK_THROWS_AS(sgd(obj, data, cfg, theta0), Error);
}

TEST_CASE("sgd trajectories") {
    Rng rng(10);
    const SampleSet data = labeled_cloud(15, 3, rng);

    SgdConfig cfg;
    cfg.steps = 20;
    cfg.b = 5;
    cfg.seed = 4;
    const Eigen::VectorXd start = Eigen::VectorXd::LinSpaced(3, -1.0, 2.0);
    CHECK(sgd(FlatObjective(), data, cfg, start).theta == start);

    const MetricHingeObjective obj(3, 2.0);
    cfg.record_every = 5;
    const Eigen::VectorXd theta0 = obj.as_vector(Eigen::MatrixXd::Identity(3, 3));
    const SgdResult a = sgd(obj, data, cfg, theta0, [](const Eigen::VectorXd& t) { return t.sum(); });
    const SgdResult b = sgd(obj, data, cfg, theta0);
    CHECK(a.theta == b.theta);
    REQUIRE(a.trajectory.size() == 5);
    CHECK(a.trajectory.front().t == 0);
    CHECK(a.trajectory.back().t == 20);
    CHECK(*a.trajectory.front().risk == theta0.sum());
    CHECK(!b.trajectory.back().risk);
    CHECK(min_eigenvalue(obj.as_matrix(a.theta)) >= -1e-10);

    cfg.steps = 0;
    const SgdResult z = sgd(obj, data, cfg, theta0, [](const Eigen::VectorXd& t) { return t.sum(); });
    REQUIRE(z.trajectory.size() == 1);
    CHECK(z.theta == theta0);

    cfg.steps = 10;
    cfg.projection = ProjectionPolicy::EveryStep;
    cfg.record_every = 1;
    const SgdResult e = sgd(obj, data, cfg, theta0, [&](const Eigen::VectorXd& t) {
        return min_eigenvalue(obj.as_matrix(t));
    });
    for (std::size_t i = 1; i < e.trajectory.size(); ++i) CHECK(*e.trajectory[i].risk >= -1e-10);
}

TEST_CASE("full-gradient descent decreases a smooth objective") {
    Rng rng(11);
    const SampleSet data = random_samples({12}, 3, rng);
    const QuadraticObjective obj(3);
    const TupleList all = full_termset(IndexSpace({12}, {2})).terms();
    SgdConfig cfg;
    cfg.mode = GradientMode::Full;
    cfg.steps = 50;
    cfg.eta0 = 1.5;
    cfg.record_every = 1;
    const SgdResult r = sgd(obj, data, cfg, Eigen::VectorXd::Constant(3, 5.0),
                            [&](const Eigen::VectorXd& t) { return obj.loss_sum(t, data, all); });
    REQUIRE(r.trajectory.size() == 51);
    for (std::size_t i = 1; i < r.trajectory.size(); ++i) CHECK(*r.trajectory[i].risk < *r.trajectory[i - 1].risk);
}

TEST_CASE("gradient estimates are unbiased") {
    Rng rng(12);
    const SampleSet data = labeled_cloud(12, 3, rng);
    const MetricHingeObjective obj(3, 2.0);
    const Eigen::VectorXd theta = obj.as_vector(0.3 * Eigen::MatrixXd::Identity(3, 3));
    SgdConfig full;
    full.mode = GradientMode::Full;
    Rng unused(0);
    const Eigen::VectorXd exact = estimate_gradient(obj, data, theta, full, unused);

    SgdConfig inc;
    inc.b = 10;
    SgdConfig sub;
    sub.mode = GradientMode::CompleteSubsample;
    sub.subsample_sizes = {5};
    for (const SgdConfig& cfg : {inc, sub}) {
        const Moments m = gradient_moments(obj, data, theta, cfg, 10000, rng);
        for (Eigen::Index i = 0; i < exact.size(); ++i)
            CHECK(std::abs(m.mean[i] - exact[i]) <= 4 * std::sqrt(m.var[i] / 10000) + 1e-12);
    }
}

TEST_CASE("incomplete gradients beat complete subsamples at matched budget") {
    Rng rng(13);
    const SampleSet data = labeled_cloud(400, 3, rng);
    const MetricHingeObjective obj(3, 2.0);
    const Eigen::VectorXd theta = obj.as_vector(0.3 * Eigen::MatrixXd::Identity(3, 3));
    for (std::size_t np : {8u, 16u, 32u}) {
        SgdConfig inc;
        inc.b = np * (np - 1) / 2;
        SgdConfig sub;
        sub.mode = GradientMode::CompleteSubsample;
        sub.subsample_sizes = {np};
        CHECK(draw_gradient_terms(IndexSpace({400}, {2}), sub, rng).size() == inc.b);
        const double vi = gradient_moments(obj, data, theta, inc, 10000, rng).var.sum();
        const double vs = gradient_moments(obj, data, theta, sub, 10000, rng).var.sum();
        CHECK(vi < vs);
    }
}
