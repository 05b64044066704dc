#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "support.hpp"
#include "ustat/sampling.hpp"

using namespace ustat;
using namespace ustat::testing;

namespace {

std::set<std::vector<std::uint32_t>> as_set(const TermSet& t) {
    std::set<std::vector<std::uint32_t>> out;
    for (std::size_t i = 0; i < t.size(); ++i) out.insert(t[i].to_tuple().flat());
    return out;
}

bool all_canonical(const TermSet& t) {
    const IndexSpace& s = t.space();
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t k = 0; k < s.blocks(); ++k) {
            const auto b = t[i].block(k);
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (b[j] >= s.sizes()[k]) return false;
                if (j > 0 && b[j - 1] >= b[j]) return false;
            }
        }
    }
    return true;
}

bool same_terms(const TermSet& a, const TermSet& b) { return a.terms().flat() == b.terms().flat(); }

}  // namespace

TEST_CASE("scheme names") {
    for (Scheme s : {Scheme::WithReplacement, Scheme::WithoutReplacement, Scheme::Bernoulli})
        CHECK(parse_scheme(scheme_name(s)) == s);
    CHECK_THROWS_AS(parse_scheme("reservoir"), Error);
}

TEST_CASE("with replacement basics") {
    Rng rng(1);
    const IndexSpace single({2}, {2});
    const TermSet five = sample_with_replacement(single, 5, rng);
    REQUIRE(five.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(five[i].to_tuple().flat() == std::vector<std::uint32_t>{0, 1});

    const IndexSpace s({7}, {2});
    const TermSet six = sample_with_replacement(s, 6, rng);
    CHECK(six.size() == 6);
    CHECK(six.requested_b() == 6);
    CHECK(six.scheme() == Scheme::WithReplacement);
    CHECK_THROWS_AS(sample_with_replacement(s, 0, rng), Error);
}

TEST_CASE("with replacement frequencies are uniform") {
    const IndexSpace s({7}, {2});
    Rng rng(77);
    const TermSet t = sample_with_replacement(s, 100000, rng);
    std::vector<double> counts(21, 0.0);
    for (std::size_t i = 0; i < t.size(); ++i) counts[static_cast<std::size_t>(rank_tuple(s, t[i].to_tuple()))] += 1;
    const double p = 1.0 / 21.0;
    const double sd = std::sqrt(100000 * p * (1 - p));
    for (double c : counts) CHECK(std::abs(c - 100000 * p) <= 4 * sd);
}

TEST_CASE("without replacement basics") {
    Rng rng(2);
    const IndexSpace s({7}, {2});
    const TermSet six = sample_without_replacement(s, 6, rng);
    CHECK(six.size() == 6);
    CHECK(as_set(six).size() == 6);
    CHECK(six.inclusion_probability() == doctest::Approx(6.0 / 21.0));

    const TermSet all = sample_without_replacement(s, 21, rng);
    std::set<std::vector<std::uint32_t>> expected;
    for (const auto& t : enumerate_tuples(s)) expected.insert(t.flat());
    CHECK(as_set(all) == expected);
    CHECK(all.inclusion_probability() == 1.0);

    CHECK_THROWS_AS(sample_without_replacement(s, 22, rng), Error);
    CHECK_THROWS_AS(sample_without_replacement(s, 0, rng), Error);
}

TEST_CASE("without replacement single draws are uniform") {
    const IndexSpace s({7}, {2});
    Rng rng(3);
    std::vector<double> counts(21, 0.0);
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) {
        const TermSet t = sample_without_replacement(s, 1, rng);
        counts[static_cast<std::size_t>(rank_tuple(s, t[0].to_tuple()))] += 1;
    }
    const double p = 1.0 / 21.0;
    const double sd = std::sqrt(trials * p * (1 - p));
    for (double c : counts) CHECK(std::abs(c - trials * p) <= 4 * sd);
}

TEST_CASE("without replacement inclusion frequencies at B = 6") {
    const IndexSpace s({7}, {2});
    Rng rng(4);
    std::vector<double> counts(21, 0.0);
    const int trials = 20000;
    for (int i = 0; i < trials; ++i) {
        const TermSet t = sample_without_replacement(s, 6, rng);
        for (std::size_t j = 0; j < t.size(); ++j) counts[static_cast<std::size_t>(rank_tuple(s, t[j].to_tuple()))] += 1;
    }
    const double p = 6.0 / 21.0;
    const double sd = std::sqrt(trials * p * (1 - p));
    for (double c : counts) CHECK(std::abs(c - trials * p) <= 4 * sd);
}

TEST_CASE("without replacement on a huge space") {
    const IndexSpace s({1000000, 1000000}, {3, 3});
    Rng rng(5);
    const TermSet t = sample_without_replacement(s, 5000, rng);
    CHECK(t.size() == 5000);
    CHECK(as_set(t).size() == 5000);
    CHECK(all_canonical(t));
    CHECK(t.inclusion_probability() > 0.0);
}

TEST_CASE("bernoulli basics") {
    Rng rng(6);
    const IndexSpace s({7}, {2});
    const TermSet full = sample_bernoulli(s, 21, rng);
    CHECK(full.size() == 21);
    CHECK(full.inclusion_probability() == 1.0);
    CHECK_THROWS_AS(sample_bernoulli(s, 22, rng), Error);

    bool saw_empty = false;
    for (int i = 0; i < 200 && !saw_empty; ++i) saw_empty = sample_bernoulli(s, 1, rng).empty();
    CHECK(saw_empty);
}

TEST_CASE("bernoulli size moments") {
    const IndexSpace s({7}, {2});
    Rng rng(7);
    std::vector<double> sizes;
    for (int i = 0; i < 10000; ++i) {
        const TermSet t = sample_bernoulli(s, 6, rng);
        CHECK(as_set(t).size() == t.size());
        sizes.push_back(static_cast<double>(t.size()));
    }
    CHECK(std::abs(mean_of(sizes) - 6.0) <= 4.0 * std::sqrt(21.0 * (6.0 / 21) * (15.0 / 21)) / 100.0);

    // Expected sizes are integers, so pi = 0.3 is taken on a 30-tuple space.
    const IndexSpace s2({6, 5}, {1, 1});
    std::vector<double> sizes2;
    for (int i = 0; i < 10000; ++i) sizes2.push_back(static_cast<double>(sample_bernoulli(s2, 9, rng).size()));
    const double pi = 0.3;
    CHECK(relative_error(sample_variance(sizes2), 30 * pi * (1 - pi)) <= 0.10);
}

TEST_CASE("bernoulli on a space beyond the loop cap") {
    const IndexSpace s({200000}, {2});
    REQUIRE(*s.cardinality_u64() > kBernoulliLoopCap);
    Rng rng(8);
    std::vector<double> sizes;
    for (int i = 0; i < 400; ++i) {
        const TermSet t = sample_bernoulli(s, 1000, rng);
        CHECK(all_canonical(t));
        sizes.push_back(static_cast<double>(t.size()));
    }
    CHECK(as_set(sample_bernoulli(s, 1000, rng)).size() > 900);
    CHECK(std::abs(mean_of(sizes) - 1000.0) <= 4.0 * std::sqrt(1000.0 / 400.0));
}

TEST_CASE("draws are deterministic per seed") {
    const IndexSpace s({30, 20}, {2, 1});
    for (Scheme scheme : {Scheme::WithReplacement, Scheme::WithoutReplacement, Scheme::Bernoulli}) {
        Rng a(99), b(99), c(100);
        const TermSet ta = sample_terms(scheme, s, 200, a);
        const TermSet tb = sample_terms(scheme, s, 200, b);
        const TermSet tc = sample_terms(scheme, s, 200, c);
        CHECK(same_terms(ta, tb));
        CHECK(!same_terms(ta, tc));
        CHECK(ta.seed() == 99);
        CHECK(all_canonical(ta));
    }
}

TEST_CASE("every scheme stays canonical on random spaces") {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t k = 1 + rng.uniform_below(2);
        std::vector<std::size_t> sizes, degrees;
        for (std::size_t i = 0; i < k; ++i) {
            sizes.push_back(3 + rng.uniform_below(30));
            degrees.push_back(1 + rng.uniform_below(3));
        }
        const IndexSpace s(sizes, degrees);
        const std::uint64_t b = 1 + rng.uniform_below(std::min<std::uint64_t>(*s.cardinality_u64(), 300));
        for (Scheme scheme : {Scheme::WithReplacement, Scheme::WithoutReplacement, Scheme::Bernoulli})
            CHECK(all_canonical(sample_terms(scheme, s, b, rng)));
    }
}

TEST_CASE("full term set follows enumeration order") {
    const IndexSpace s({5, 4}, {2, 2});
    const TermSet t = full_termset(s);
    const auto all = enumerate_tuples(s);
    REQUIRE(t.size() == all.size());
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(t[i].to_tuple() == all[i]);
    CHECK(t.scheme() == Scheme::WithoutReplacement);
}

TEST_CASE("term set csv round trip") {
    const IndexSpace s({12, 9}, {2, 3});
    for (Scheme scheme : {Scheme::WithReplacement, Scheme::WithoutReplacement, Scheme::Bernoulli}) {
        Rng rng(21);
        const TermSet t = sample_terms(scheme, s, 40, rng);
        std::stringstream buf;
        write_termset(buf, t);
        const TermSet back = read_termset(buf, s);
        CHECK(back.scheme() == t.scheme());
        CHECK(back.seed() == t.seed());
        CHECK(back.requested_b() == t.requested_b());
        CHECK(same_terms(back, t));
    }
    std::istringstream bad("scheme,seed,B\nwith_replacement,1,1\n0,1;2\n");
    CHECK_THROWS_AS(read_termset(bad, s), Error);
    std::istringstream out_of_range("scheme,seed,B\nwith_replacement,1,1\n0,12;1,2,3\n");
    CHECK_THROWS_AS(read_termset(out_of_range, s), Error);
}
