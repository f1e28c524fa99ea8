// Serial reference vs OpenMP kernels: batch simulation and the truncated
// binomial convolution. Also checks the two paths agree.
//
//   bench_kernels [experiments] [runs] [threads]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "bellgamma/analysis.hpp"
#include "bellgamma/kernels.hpp"

using namespace bellgamma;

namespace {

template <class F>
double time_ms(F&& f, int reps) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    const std::uint64_t experiments = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 64;
    const std::uint64_t runs = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 100000;
    const int threads = argc > 3 ? std::atoi(argv[3]) : 0;

    const std::vector<AnglePair> pairs(experiments, AnglePair{Angle(0.3), Angle(0.0)});
    const SeedSpec seed{12345};
    bool agree = true;

    for (const auto& model : {hv::ModelSpec::quantum(), hv::ModelSpec::bell_sign(),
                              hv::ModelSpec::noise(0.1)}) {
        std::vector<ExperimentResult> serial, parallel;
        const double ts = time_ms([&] { serial = kernels::run_experiments_serial(model, pairs, runs, seed); }, 3);
        const double tp = time_ms(
            [&] { parallel = kernels::run_experiments_parallel(model, pairs, runs, seed, threads); }, 3);
        agree = agree && serial == parallel;
        std::printf("batch %-14s N=%llu n=%llu  serial %9.2f ms  parallel(%d) %9.2f ms  speedup %.2fx\n",
                    model.name().c_str(), static_cast<unsigned long long>(experiments),
                    static_cast<unsigned long long>(runs), ts, kernels::effective_threads(threads),
                    tp, ts / tp);
    }

    for (std::size_t support : {256u, 1024u, 4096u}) {
        const auto pmf = analysis::binomial_pmf_prefix(10000, 0.05, support);
        std::vector<double> dist(support, 0.0);
        dist[0] = 1.0;
        dist = kernels::convolve_truncated_serial(dist, pmf);
        std::vector<double> a, b;
        const double ts = time_ms([&] { a = kernels::convolve_truncated_serial(dist, pmf); }, 5);
        const double tp = time_ms([&] { b = kernels::convolve_truncated_parallel(dist, pmf, threads); }, 5);
        agree = agree && a == b;
        std::printf("convolve support=%-5zu           serial %9.3f ms  parallel(%d) %9.3f ms  speedup %.2fx\n",
                    support, ts, kernels::effective_threads(threads), tp, ts / tp);
    }

    std::printf("serial and parallel results %s\n", agree ? "identical" : "DIFFER");
    return agree ? 0 : 1;
}
