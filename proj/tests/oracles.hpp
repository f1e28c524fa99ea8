#pragma once

// Test-only reference computations. None of these call into the library's
// implementation of the quantity they check.

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace oracle {

/// P(sum m_l < N) by enumerating every +/- outcome of every run: 2^(n N)
/// patterns, each weighted by its Bernoulli product probability.
inline double enumerate_violation_probability(std::span<const double> p_list, unsigned n) {
    const auto experiments = static_cast<unsigned>(p_list.size());
    const unsigned bits = n * experiments;
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    double total = 0.0;
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << bits); ++pattern) {
        double weight = 1.0;
        unsigned successes = 0;
        for (unsigned l = 0; l < experiments; ++l) {
            const auto k = static_cast<unsigned>(std::popcount((pattern >> (l * n)) & mask));
            successes += k;
            weight *= std::pow(p_list[l], k) * std::pow(1.0 - p_list[l], n - k);
        }
        if (successes < experiments) {
            total += weight;
        }
    }
    return total;
}

/// Monte Carlo estimate of P(sum m_l < N) with std::binomial_distribution.
inline double monte_carlo_violation_probability(std::span<const double> p_list, unsigned n,
                                                std::uint64_t draws, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<std::binomial_distribution<unsigned>> dists;
    for (double p : p_list) {
        dists.emplace_back(n, p);
    }
    std::uint64_t hits = 0;
    for (std::uint64_t d = 0; d < draws; ++d) {
        unsigned sum = 0;
        for (auto& dist : dists) {
            sum += dist(gen);
        }
        hits += sum < p_list.size() ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(draws);
}

/// Mean of r_A r_B for the sign model over an even lambda grid on [0, 2pi).
inline double sign_model_grid_correlation(double theta_a, double theta_b, std::uint64_t points) {
    double acc = 0.0;
    for (std::uint64_t i = 0; i < points; ++i) {
        const double lambda = 2.0 * std::numbers::pi * (static_cast<double>(i) + 0.5) /
                              static_cast<double>(points);
        const double ra = std::cos(lambda - theta_a) >= 0.0 ? 1.0 : -1.0;
        const double rb = std::cos(lambda - theta_b) >= 0.0 ? -1.0 : 1.0;
        acc += ra * rb;
    }
    return acc / static_cast<double>(points);
}

} // namespace oracle
