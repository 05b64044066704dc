#pragma once

// Closed-form variance identities, uniform deviation bounds for complete and
// incomplete U-processes over a VC-major class, the distribution-free
// model-selection penalty and the penalized selection rule.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ustat/core.hpp"
#include "ustat/sampling.hpp"

namespace ustat {

struct BoundInputs {
    double kernel_bound = 1.0;   // M: uniform bound on |H| over the class
    double vc_dimension = 1.0;   // V
    std::uint64_t min_blocks = 1;  // N = min_k floor(n_k / d_k)
    double log_lambda = 0.0;     // ln(1 + #Lambda)
    std::uint64_t b = 1;         // number of sampled terms
    double delta = 0.05;         // confidence level parameter, in (0, 1)
    std::uint64_t pooled_n = 1;  // n = n_1 + ... + n_K

    // N, ln(1 + #Lambda) and n taken from an index space.
    static BoundInputs from_space(const IndexSpace& space, double kernel_bound, double vc_dimension, std::uint64_t b,
                                  double delta);
    void validate() const;
};

struct VarianceDecomposition {
    double sigma1_sq = 0.0;  // variance of the linear projection H_1(X)
    double sigma2_sq = 0.0;  // variance of the degenerate part H_2(X, X')
    std::size_t n = 2;
};

// (1 - 1/B) * var_complete + var_kernel / B.
double incomplete_variance(double var_complete, double var_kernel, std::uint64_t b);

// 4 sigma1^2 / n + 2 sigma2^2 / (n (n - 1)).
double degree2_variance(const VarianceDecomposition& decomp);

// Plug-in estimates of sigma1^2 and sigma2^2 for a one-sample degree-2 kernel.
VarianceDecomposition estimate_projections(const Kernel& kernel, const SampleSet& samples);

// sup_H |U_n(H) - mu(H)| <= M { 2 sqrt(2 V ln(1+N) / N) + sqrt(ln(1/delta) / N) }.
double complete_deviation_bound(const BoundInputs& in);

// sup_H |U~_B(H) - U_n(H)| <= M sqrt(2 (V ln(1+#Lambda) + ln(2/delta)) / B).
double incomplete_vs_complete_bound(const BoundInputs& in);

// sup_H |U~_B(H) - mu(H)| <= M { 2 sqrt(2 V ln(1+N)/N) + sqrt(ln(2/delta)/N)
//                                + sqrt(2 (V ln(1+#Lambda) + ln(4/delta)) / B) }.
double incomplete_total_bound(const BoundInputs& in);

// Horvitz-Thompson deviation from U_n for the Bernoulli and the fixed-size
// without-replacement designs, with L = ln(2/delta) + V ln(1+#Lambda).
double ht_deviation_bound(const BoundInputs& in, Scheme scheme);

struct ModelSpec {
    std::size_t model_index = 1;  // m >= 1, unique within a list
    double vc_dimension = 1.0;    // V_m
    double kernel_bound = 1.0;    // M_m
    double risk = 0.0;            // incomplete empirical risk of the class minimizer
};

struct PenaltyInputs {
    std::uint64_t b = 1;
    std::uint64_t pooled_n = 1;
    std::uint64_t min_blocks = 1;
    double log_lambda = 0.0;
    double envelope = 1.0;  // M >= sup_m M_m
};

// 2 M_m { sqrt(2 V_m ln(1+N)/N) + sqrt(2 (ln 2 + V_m ln(1+#Lambda)) / B) }
//   + 2 M sqrt((B + n) ln m / B^2).
double penalty(const PenaltyInputs& in, const ModelSpec& model);

struct Selection {
    std::size_t model_index = 0;
    std::vector<double> penalties;  // in input order
    std::vector<double> criteria;   // risk + penalty, in input order
};

// argmin_m risk_m + pen(B, m); ties go to the smallest model index.
Selection select_model(std::span<const ModelSpec> models, const PenaltyInputs& in);

// Same rule with caller-supplied penalties (for example c * ln m).
std::size_t select_penalized(std::span<const std::size_t> model_indices, std::span<const double> risks,
                             std::span<const double> penalties);

}  // namespace ustat
