#pragma once

// Data-parallel kernels. Each has a serial reference kept for tests and
// benchmarks; the parallel variants must agree with it bit for bit.

#include <cstdint>
#include <span>
#include <vector>

#include "bellgamma/engine.hpp"

namespace bellgamma::kernels {

std::vector<ExperimentResult> run_experiments_serial(const hv::ModelSpec& model,
                                                     std::span<const AnglePair> pairs,
                                                     std::uint64_t n_runs, SeedSpec seed);

std::vector<ExperimentResult> run_experiments_parallel(const hv::ModelSpec& model,
                                                       std::span<const AnglePair> pairs,
                                                       std::uint64_t n_runs, SeedSpec seed,
                                                       int threads = 0);

/// out[t] = sum_{k <= t} dist[t - k] * pmf[k] for t < dist.size(); mass
/// beyond the last index is dropped. Summation order is fixed by k.
std::vector<double> convolve_truncated_serial(std::span<const double> dist,
                                              std::span<const double> pmf);

std::vector<double> convolve_truncated_parallel(std::span<const double> dist,
                                                std::span<const double> pmf, int threads = 0);

/// Number of threads the parallel kernels would use for `threads`.
int effective_threads(int threads);

} // namespace bellgamma::kernels
