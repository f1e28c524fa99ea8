#include "bellgamma/kernels.hpp"

#include <algorithm>
#include <exception>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bellgamma::kernels {

namespace {

ExperimentResult run_one(const hv::ModelSpec& model, const AnglePair& pair, std::uint64_t n_runs,
                         SeedSpec seed, std::uint64_t index) {
    RandomStream stream = seed.stream(index);
    return run_experiment(ExperimentConfig{model, pair.a, pair.b, n_runs}, stream);
}

double convolve_at(std::span<const double> dist, std::span<const double> pmf, std::size_t t) {
    const std::size_t k_end = std::min(t + 1, pmf.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < k_end; ++k) {
        acc += dist[t - k] * pmf[k];
    }
    return acc;
}

} // namespace

int effective_threads(int threads) {
#ifdef _OPENMP
    return threads > 0 ? threads : omp_get_max_threads();
#else
    (void)threads;
    return 1;
#endif
}

std::vector<ExperimentResult> run_experiments_serial(const hv::ModelSpec& model,
                                                     std::span<const AnglePair> pairs,
                                                     std::uint64_t n_runs, SeedSpec seed) {
    std::vector<ExperimentResult> out;
    out.reserve(pairs.size());
    for (std::size_t l = 0; l < pairs.size(); ++l) {
        out.push_back(run_one(model, pairs[l], n_runs, seed, l));
    }
    return out;
}

std::vector<ExperimentResult> run_experiments_parallel(const hv::ModelSpec& model,
                                                       std::span<const AnglePair> pairs,
                                                       std::uint64_t n_runs, SeedSpec seed,
                                                       int threads) {
    const int nthreads = effective_threads(threads);
    if (nthreads <= 1 || pairs.size() < 2) {
        return run_experiments_serial(model, pairs, n_runs, seed);
    }

    std::vector<std::optional<ExperimentResult>> slots(pairs.size());
    std::exception_ptr failure;
    const auto count = static_cast<std::int64_t>(pairs.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
    for (std::int64_t l = 0; l < count; ++l) {
        try {
            slots[l] = run_one(model, pairs[l], n_runs, seed, static_cast<std::uint64_t>(l));
        } catch (...) {
#pragma omp critical(bellgamma_kernel_failure)
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    std::vector<ExperimentResult> out;
    out.reserve(slots.size());
    for (auto& s : slots) {
        out.push_back(*s);
    }
    return out;
}

std::vector<double> convolve_truncated_serial(std::span<const double> dist,
                                              std::span<const double> pmf) {
    std::vector<double> out(dist.size());
    for (std::size_t t = 0; t < dist.size(); ++t) {
        out[t] = convolve_at(dist, pmf, t);
    }
    return out;
}

std::vector<double> convolve_truncated_parallel(std::span<const double> dist,
                                                std::span<const double> pmf, int threads) {
    const int nthreads = effective_threads(threads);
    // Below this the fork/join overhead dominates.
    if (nthreads <= 1 || dist.size() * pmf.size() < 65536) {
        return convolve_truncated_serial(dist, pmf);
    }
    std::vector<double> out(dist.size());
    const auto size = static_cast<std::int64_t>(dist.size());

#pragma omp parallel for schedule(static) num_threads(nthreads)
    for (std::int64_t t = 0; t < size; ++t) {
        out[t] = convolve_at(dist, pmf, static_cast<std::size_t>(t));
    }
    return out;
}

} // namespace bellgamma::kernels
