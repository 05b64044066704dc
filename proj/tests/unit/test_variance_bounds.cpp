#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"
#include "ustat/variance_bounds.hpp"

using namespace ustat;
using namespace ustat::testing;

namespace {

BoundInputs base() {
    BoundInputs in;
    in.kernel_bound = 1.0;
    in.vc_dimension = 2.0;
    in.min_blocks = 100;
    in.log_lambda = std::log(4951.0);
    in.b = 100;
    in.delta = 0.1;
    in.pooled_n = 200;
    return in;
}

using BoundFn = double (*)(const BoundInputs&);

double ht_bernoulli(const BoundInputs& in) { return ht_deviation_bound(in, Scheme::Bernoulli); }
double ht_wor(const BoundInputs& in) { return ht_deviation_bound(in, Scheme::WithoutReplacement); }

const BoundFn kBounds[] = {complete_deviation_bound, incomplete_vs_complete_bound, incomplete_total_bound,
                           ht_bernoulli, ht_wor};

SampleSet normal_column(std::size_t n, Rng& rng) {
    std::vector<double> x(n);
    for (double& v : x) v = rng.normal();
    return SampleSet(column(x));
}

const FunctionKernel analytic({2}, [](const SampleSet& s, TupleRef t) {
    const double a = s.block(0).row(t[0])[0], b = s.block(0).row(t[1])[0];
    return a * b + a + b;
});

}  // namespace

TEST_CASE("incomplete variance identity") {
    CHECK(incomplete_variance(0.5, 2.0, 4) == 0.875);
    CHECK(incomplete_variance(0.5, 2.0, 1) == 2.0);
    CHECK(std::abs(incomplete_variance(0.5, 2.0, 1000000) - 0.5) <= 1e-5);
    for (std::uint64_t b : {1u, 2u, 7u, 1000u}) CHECK(incomplete_variance(0.37, 0.37, b) == doctest::Approx(0.37));
    double prev = incomplete_variance(0.5, 2.0, 1);
    for (std::uint64_t b = 2; b < 200; ++b) {
        const double v = incomplete_variance(0.5, 2.0, b);
        CHECK(v < prev);
        CHECK(v >= 0.5);
        prev = v;
    }
    CHECK_THROWS_AS(incomplete_variance(0.5, 2.0, 0), Error);
}

TEST_CASE("degree-2 variance") {
    CHECK(degree2_variance({1.0, 1.0, 10}) == doctest::Approx(0.4222222222222222).epsilon(1e-15));
    CHECK(degree2_variance({0.0, 3.0, 7}) == doctest::Approx(6.0 / 42.0));
    CHECK_THROWS_AS(degree2_variance({1.0, 1.0, 1}), Error);
    CHECK_THROWS_AS(degree2_variance({-1.0, 1.0, 5}), Error);
}

TEST_CASE("degree-2 variance matches simulation") {
    Rng rng(31);
    const IndexSpace space({20}, {2});
    std::vector<double> u(10000);
    for (double& v : u) v = complete_u(analytic, normal_column(20, rng), space).value;
    CHECK(relative_error(sample_variance(u), degree2_variance({1.0, 1.0, 20})) <= 0.05);
}

TEST_CASE("projection estimates") {
    Rng rng(32);
    const SampleSet data = normal_column(2000, rng);
    const VarianceDecomposition d = estimate_projections(analytic, data);
    CHECK(d.n == 2000);
    CHECK(d.sigma1_sq >= 0.9);
    CHECK(d.sigma1_sq <= 1.1);
    CHECK(d.sigma2_sq == doctest::Approx(1.0).epsilon(0.15));

    const FunctionKernel additive({2}, [](const SampleSet& s, TupleRef t) {
        return s.block(0).row(t[0])[0] + s.block(0).row(t[1])[0];
    });
    CHECK(estimate_projections(additive, data).sigma2_sq <= 0.01);

    const FunctionKernel flat({2}, [](const SampleSet&, TupleRef) { return 4.0; });
    const VarianceDecomposition z = estimate_projections(flat, normal_column(10, rng));
    CHECK(z.sigma1_sq == doctest::Approx(0.0));
    CHECK(z.sigma2_sq == doctest::Approx(0.0));

    const FunctionKernel triple({3}, [](const SampleSet&, TupleRef) { return 0.0; });
    CHECK_THROWS_AS(estimate_projections(triple, data), Error);
    CHECK_THROWS_AS(estimate_projections(analytic, normal_column(3, rng)), Error);
}

TEST_CASE("pinned bound values") {
    BoundInputs in;
    in.kernel_bound = 1.0;
    in.vc_dimension = 1.0;
    in.min_blocks = 100;
    in.delta = 0.05;
    CHECK(complete_deviation_bound(in) == doctest::Approx(0.7807080731672648).epsilon(1e-13));
    CHECK(complete_deviation_bound(in) == doctest::Approx(0.78064).epsilon(1e-4));

    in.log_lambda = std::log(22.0);
    in.b = 6;
    in.delta = 0.1;
    CHECK(incomplete_vs_complete_bound(in) == doctest::Approx(1.4244033519234531).epsilon(1e-13));
    CHECK(ht_deviation_bound(in, Scheme::WithoutReplacement) == doctest::Approx(1.4244033519234534).epsilon(1e-13));
    CHECK(ht_deviation_bound(in, Scheme::Bernoulli) == doctest::Approx(2.6907188415701).epsilon(1e-13));
    CHECK_THROWS_AS(ht_deviation_bound(in, Scheme::WithReplacement), Error);

    in.log_lambda = std::log(4951.0);
    in.b = 100;
    CHECK(incomplete_total_bound(in) == doctest::Approx(1.2745951920411094).epsilon(1e-13));
}

TEST_CASE("bound inputs from an index space") {
    const BoundInputs in = BoundInputs::from_space(IndexSpace({10, 6}, {2, 3}), 2.0, 3.0, 50, 0.2);
    CHECK(in.min_blocks == 2);
    CHECK(in.pooled_n == 16);
    CHECK(in.log_lambda == doctest::Approx(std::log(901.0)));
    CHECK(in.kernel_bound == 2.0);
    CHECK(in.b == 50);
}

TEST_CASE("bound input validation") {
    for (BoundFn f : kBounds) {
        BoundInputs in = base();
        in.delta = 1.0;
        CHECK_THROWS_AS(f(in), Error);
        in = base();
        in.delta = 0.0;
        CHECK_THROWS_AS(f(in), Error);
        in = base();
        in.vc_dimension = 0.5;
        CHECK_THROWS_AS(f(in), Error);
        in = base();
        in.kernel_bound = 0.0;
        CHECK_THROWS_AS(f(in), Error);
        in = base();
        in.b = 0;
        CHECK_THROWS_AS(f(in), Error);
        in = base();
        in.min_blocks = 0;
        CHECK_THROWS_AS(f(in), Error);
    }
}

TEST_CASE("bounds are positive and monotone on grids") {
    for (BoundFn f : kBounds) {
        for (double m : {0.5, 1.0, 3.0}) {
            for (double v : {1.0, 2.0, 5.0}) {
                for (double delta : {0.01, 0.05, 0.3}) {
                    BoundInputs in = base();
                    in.kernel_bound = m;
                    in.vc_dimension = v;
                    in.delta = delta;
                    const double x = f(in);
                    CHECK(x > 0.0);

                    BoundInputs more = in;
                    more.b *= 4;
                    CHECK(f(more) <= x);
                    more = in;
                    more.min_blocks *= 4;
                    CHECK(f(more) <= x);
                    more = in;
                    more.vc_dimension += 1.0;
                    CHECK(f(more) >= x);
                    more = in;
                    more.kernel_bound *= 2.0;
                    CHECK(f(more) == doctest::Approx(2.0 * x));
                    more = in;
                    more.delta *= 2.0;
                    CHECK(f(more) <= x);
                }
            }
        }
    }
}

TEST_CASE("bound scaling laws") {
    BoundInputs in = base();
    const double x = incomplete_vs_complete_bound(in);
    in.b *= 4;
    CHECK(incomplete_vs_complete_bound(in) == doctest::Approx(x / 2));

    in = base();
    const double total = incomplete_total_bound(in);
    BoundInputs half = in;
    half.delta = in.delta / 2;
    CHECK(total >= incomplete_vs_complete_bound(half));
    CHECK(total >= complete_deviation_bound(in));
    in.b = 1000000000000ull;
    BoundInputs far = in;
    far.min_blocks = 1000000000000ull;
    CHECK(incomplete_total_bound(far) < 1e-4);

    in = base();
    CHECK(ht_deviation_bound(in, Scheme::WithoutReplacement) < ht_deviation_bound(in, Scheme::Bernoulli));
}

TEST_CASE("penalty") {
    PenaltyInputs in;
    in.b = 1000;
    in.pooled_n = 1000;
    in.min_blocks = 500;
    in.log_lambda = std::log(499501.0);
    in.envelope = 1.0;
    CHECK(penalty(in, {2, 3.0, 1.0, 0.0}) == doctest::Approx(1.1868133396285419).epsilon(1e-13));

    const double one = penalty(in, {1, 3.0, 1.0, 0.0});
    const double expected = 2.0 * (std::sqrt(6.0 * std::log(501.0) / 500.0) +
                                   std::sqrt(2.0 * (std::log(2.0) + 3.0 * std::log(499501.0)) / 1000.0));
    CHECK(one == doctest::Approx(expected).epsilon(1e-14));

    double prev = 0.0;
    for (double v = 1.0; v < 20.0; v += 1.0) {
        const double p = penalty(in, {4, v, 1.0, 0.0});
        CHECK(p > prev);
        prev = p;
    }
    CHECK_THROWS_AS(penalty(in, {0, 1.0, 1.0, 0.0}), Error);
    CHECK_THROWS_AS(penalty(in, {1, 1.0, 2.0, 0.0}), Error);
}

TEST_CASE("penalized selection examples") {
    const std::vector<std::size_t> idx{1, 2, 3};
    CHECK(select_penalized(idx, std::vector<double>{0.5, 0.3, 0.29}, std::vector<double>{0.01, 0.05, 0.2}) == 2);
    CHECK(select_penalized(idx, std::vector<double>{0.4, 0.4, 0.4}, std::vector<double>{0.1, 0.2, 0.3}) == 1);
    CHECK(select_penalized(std::vector<std::size_t>{7}, std::vector<double>{3.0}, std::vector<double>{1.0}) == 7);
    CHECK(select_penalized(std::vector<std::size_t>{3, 1}, std::vector<double>{0.2, 0.2},
                           std::vector<double>{0.0, 0.0}) == 1);
    CHECK_THROWS_AS(select_penalized({}, {}, {}), Error);
}

TEST_CASE("select_model invariances") {
    Rng rng(40);
    PenaltyInputs in;
    in.b = 500;
    in.pooled_n = 500;
    in.min_blocks = 250;
    in.log_lambda = std::log(124751.0);
    in.envelope = 5.0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ModelSpec> models;
        for (std::size_t m = 1; m <= 8; ++m)
            models.push_back({m, 1.0 + static_cast<double>(rng.uniform_below(4)), 1.0 + 4.0 * rng.uniform01(),
                              3.0 * rng.uniform01()});
        const Selection sel = select_model(models, in);
        REQUIRE(sel.penalties.size() == 8);
        for (std::size_t i = 0; i < 8; ++i) CHECK(sel.criteria[i] == doctest::Approx(models[i].risk + sel.penalties[i]));
        const auto best = std::min_element(sel.criteria.begin(), sel.criteria.end()) - sel.criteria.begin();
        CHECK(sel.model_index == models[static_cast<std::size_t>(best)].model_index);

        std::vector<ModelSpec> shuffled = models;
        std::shuffle(shuffled.begin(), shuffled.end(), rng.engine());
        CHECK(select_model(shuffled, in).model_index == sel.model_index);

        const double c = 0.1 + 10.0 * rng.uniform01();
        std::vector<std::size_t> idx;
        std::vector<double> risks, pens;
        for (std::size_t i = 0; i < 8; ++i) {
            idx.push_back(models[i].model_index);
            risks.push_back(c * models[i].risk);
            pens.push_back(c * sel.penalties[i]);
        }
        CHECK(select_penalized(idx, risks, pens) == sel.model_index);
    }
    std::vector<ModelSpec> dup{{1, 1.0, 1.0, 0.0}, {1, 1.0, 1.0, 0.0}};
    CHECK_THROWS_AS(select_model(dup, in), Error);
    CHECK_THROWS_AS(select_model(std::vector<ModelSpec>{}, in), Error);
    CHECK(select_model(std::vector<ModelSpec>{{5, 2.0, 1.0, 0.3}}, in).model_index == 5);
}
