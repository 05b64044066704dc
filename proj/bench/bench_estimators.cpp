// Serial reference vs chunked OpenMP reduction for the complete and
// incomplete estimators. Usage: bench_estimators [n] [B] [repeats]

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ustat/estimators.hpp"
#include "ustat/harness.hpp"

using namespace ustat;

template <class Fn>
double best_of(int repeats, Fn&& fn, double& value) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        value = fn();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 3000;
    const std::uint64_t b = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 2'000'000;
    const int repeats = argc > 3 ? std::atoi(argv[3]) : 3;

    const SampleSet data = generate_gaussian_mixture(10, 4, 3, 1.0, n, 7);
    const FunctionKernel kernel({2}, [](const SampleSet& s, TupleRef t) {
        return euclidean_distance(s.block(0).row(t[0]), s.block(0).row(t[1]));
    });
    const IndexSpace space({n}, {2});
    Rng rng(11);
    const TermSet terms = sample_with_replacement(space, b, rng);

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::cout << "case,mode,threads,terms,seconds,value\n";
    auto report = [&](const char* name, const char* mode, std::uint64_t count, double secs, double value) {
        std::cout << name << ',' << mode << ',' << threads << ',' << count << ',' << secs << ','
                  << std::setprecision(17) << value << std::setprecision(6) << '\n';
    };

    const EstimatorOptions seq{Execution::Sequential, kDefaultEnumerationCap};
    const EstimatorOptions par{Execution::Parallel, kDefaultEnumerationCap};
    const auto card = *space.cardinality_u64();
    double v_seq = 0.0, v_par = 0.0;
    double t = best_of(repeats, [&] { return complete_u(kernel, data, space, seq).value; }, v_seq);
    report("complete", "serial", card, t, v_seq);
    t = best_of(repeats, [&] { return complete_u(kernel, data, space, par).value; }, v_par);
    report("complete", "parallel", card, t, v_par);
    double worst = std::abs(v_seq - v_par) / std::abs(v_seq);

    t = best_of(repeats, [&] { return incomplete_u(kernel, data, terms, seq).value; }, v_seq);
    report("incomplete", "serial", b, t, v_seq);
    t = best_of(repeats, [&] { return incomplete_u(kernel, data, terms, par).value; }, v_par);
    report("incomplete", "parallel", b, t, v_par);
    worst = std::max(worst, std::abs(v_seq - v_par) / std::abs(v_seq));

    std::cerr << "max relative difference serial vs parallel: " << worst << '\n';
    return worst <= 1e-12 ? 0 : 1;
}
