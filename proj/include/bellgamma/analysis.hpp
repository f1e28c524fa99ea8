#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bellgamma/core.hpp"
#include "bellgamma/engine.hpp"
#include "bellgamma/hvmodels.hpp"

namespace bellgamma::analysis {

/// Relative slack within which an expectation-level Gamma is treated as equal
/// to N/n. sin^2(asin(1/sqrt(n))) is 1/n only up to an ulp, and equality is
/// satisfied.
inline constexpr double kBoundaryRelativeTolerance = 1e-12;

/// Upper end of the quantum violation window, 2 asin(1/sqrt(n)).
Angle angle_bound(std::uint64_t n_runs);

struct ViolationReport {
    std::uint64_t n_runs = 0;
    std::uint64_t n_experiments = 0;
    Angle angle_window_upper;
    double exact_gamma_qm = 0.0;
    double threshold = 0.0;
    Verdict expectation_verdict = Verdict::Satisfied;
    double finite_sample_violation_probability = 0.0;
    /// Indices with theta_l >= angle_bound(n).
    std::vector<std::size_t> outside_window;
    /// Indices with theta_l >= pi/2.
    std::vector<std::size_t> beyond_half_pi;
};

/// Angles are canonicalized to [0, pi]; a zero difference is rejected.
ViolationReport quantum_violation_report(std::span<const Angle> theta_list, std::uint64_t n_runs,
                                         Execution exec = {});

/// Binomial(n, p) probabilities for k = 0 .. limit-1 (shorter if n + 1 < limit).
std::vector<double> binomial_pmf_prefix(std::uint64_t n, double p, std::size_t limit);

/// P(sum_l m_l <= N - 1) for independent m_l ~ Binomial(n, p_l), N = p_list.size().
/// Exact up to rounding: dynamic programming over the truncated support
/// [0, N-1]; everything at or above N is absorbed and never re-enters.
double violation_probability(std::span<const double> p_list, std::uint64_t n_runs,
                             Execution exec = {});

struct AssumptionAudit {
    hv::ModelSpec model;
    Angle theta_ab;
    std::uint64_t n_runs = 0;
    std::uint64_t trials = 0;
    std::uint64_t zero_m_count = 0;
    double zero_m_frequency = 0.0;
    bool all_m_positive = false;
};

struct AuditConfig {
    hv::ModelSpec model;
    Angle theta_a;
    Angle theta_b;
    std::uint64_t n_runs = 1;
    std::uint64_t trials = 1;
    bool exclude_equal_angles = false;
};

/// Runs `trials` independent experiments (substream = trial index) and
/// records how often m = 0 occurs.
AssumptionAudit audit_assumption(const AuditConfig& config, SeedSpec seed, Execution exec = {});

struct SweepRow {
    Angle theta_ab;
    std::optional<double> c_exact;
    double c_empirical = 0.0;
    std::optional<double> s_exact;
    double s_empirical = 0.0;
    std::uint64_t m = 0;
};

/// Evenly spaced grid with both endpoints; row i uses theta_A = theta_i,
/// theta_B = 0 and substream i.
std::vector<SweepRow> sweep(const hv::ModelSpec& model, Angle theta_min, Angle theta_max,
                            std::uint64_t steps, std::uint64_t n_runs, SeedSpec seed,
                            Execution exec = {});

} // namespace bellgamma::analysis
