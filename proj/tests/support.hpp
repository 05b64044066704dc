#pragma once

// Helpers shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ustat/core.hpp"
#include "ustat/estimators.hpp"

namespace ustat::testing {

// Random K-block sample set with `dim` standard normal features per row.
inline SampleSet random_samples(const std::vector<std::size_t>& sizes, std::size_t dim, Rng& rng,
                                bool labels = false, int classes = 2) {
    std::vector<Sample> blocks;
    for (std::size_t n : sizes) {
        std::vector<double> v(n * dim);
        for (double& x : v) x = rng.normal();
        std::vector<int> y;
        if (labels) {
            y.resize(n);
            for (int& l : y) l = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(classes)));
        }
        blocks.emplace_back(dim, std::move(v), std::move(y));
    }
    return SampleSet(std::move(blocks));
}

inline Sample column(const std::vector<double>& xs, std::vector<int> labels = {}) {
    return Sample(1, xs, std::move(labels));
}

// Symmetric kernel of arbitrary degrees: sum over blocks of a product-free
// symmetric polynomial of the first feature, mixed across blocks by weights.
inline FunctionKernel polynomial_kernel(std::vector<std::size_t> degrees, double a, double b) {
    return FunctionKernel(std::move(degrees), [a, b](const SampleSet& s, TupleRef t) {
        double total = 0.0;
        for (std::size_t k = 0; k < t.blocks(); ++k) {
            double sum = 0.0, sq = 0.0;
            for (std::uint32_t i : t.block(k)) {
                const double x = s.block(k).row(i)[0];
                sum += x;
                sq += x * x;
            }
            total += (k + 1) * (a * sum * sum + b * sq) + std::sin(sum);
        }
        return total;
    });
}

// Evaluates the kernel on random tuples with the indices of each block
// shuffled; true if every permuted evaluation equals the canonical one.
inline bool check_block_symmetry(const Kernel& kernel, const SampleSet& samples, std::size_t trials, Rng& rng,
                                 double tol = 1e-12) {
    const IndexSpace space(samples.sizes(), kernel.degrees());
    std::vector<std::uint32_t> canon(space.total_degree());
    for (std::size_t t = 0; t < trials; ++t) {
        unrank_flat(space, uniform_below(rng, space.cardinality()), canon.data());
        std::vector<std::uint32_t> perm = canon;
        for (std::size_t k = 0; k < space.blocks(); ++k) {
            auto first = perm.begin() + static_cast<std::ptrdiff_t>(space.offsets()[k]);
            auto last = perm.begin() + static_cast<std::ptrdiff_t>(space.offsets()[k + 1]);
            std::shuffle(first, last, rng.engine());
        }
        const double a = kernel(samples, TupleRef(canon.data(), space.offsets()));
        const double b = kernel(samples, TupleRef(perm.data(), space.offsets()));
        if (std::abs(a - b) > tol * std::max(1.0, std::abs(a))) return false;
    }
    return true;
}

// Kernel values over the whole space, in enumeration order.
inline std::vector<double> kernel_values(const Kernel& kernel, const SampleSet& samples, const IndexSpace& space) {
    std::vector<double> out;
    for_each_tuple(space, [&](TupleRef t) { out.push_back(kernel(samples, t)); });
    return out;
}

inline double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Population variance (1/n).
inline double pop_variance(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

// Unbiased sample variance (1/(n-1)).
inline double sample_variance(const std::vector<double>& v) {
    return pop_variance(v) * static_cast<double>(v.size()) / static_cast<double>(v.size() - 1);
}

inline double relative_error(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Ordinary least squares slope of y on x.
inline double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double mx = mean_of(x), my = mean_of(y);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace ustat::testing
