#include "bellgamma/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bellgamma/kernels.hpp"
#include "bellgamma/quantum.hpp"

namespace bellgamma::analysis {

Angle angle_bound(std::uint64_t n_runs) {
    if (n_runs == 0) {
        throw std::invalid_argument("n_runs must be >= 1");
    }
    return Angle(2.0 * std::asin(1.0 / std::sqrt(static_cast<double>(n_runs))));
}

ViolationReport quantum_violation_report(std::span<const Angle> theta_list, std::uint64_t n_runs,
                                         Execution exec) {
    if (theta_list.empty()) {
        throw std::invalid_argument("angle list must not be empty");
    }
    ViolationReport report;
    report.n_runs = n_runs;
    report.n_experiments = theta_list.size();
    report.angle_window_upper = angle_bound(n_runs);

    std::vector<Angle> thetas;
    std::vector<double> probabilities;
    thetas.reserve(theta_list.size());
    probabilities.reserve(theta_list.size());
    for (std::size_t l = 0; l < theta_list.size(); ++l) {
        const Angle theta = canonical(theta_list[l]);
        if (theta.radians() == 0.0) {
            throw std::invalid_argument("angle " + std::to_string(l) +
                                        " is zero (excluded deterministic case)");
        }
        if (theta.radians() >= report.angle_window_upper.radians()) {
            report.outside_window.push_back(l);
        }
        if (theta.radians() >= std::numbers::pi / 2.0) {
            report.beyond_half_pi.push_back(l);
        }
        thetas.push_back(theta);
        probabilities.push_back(quantum::exact_s(theta));
    }

    report.exact_gamma_qm = quantum::exact_gamma(thetas);
    report.threshold = static_cast<double>(report.n_experiments) / static_cast<double>(n_runs);
    const double slack = kBoundaryRelativeTolerance * report.threshold;
    report.expectation_verdict =
        report.exact_gamma_qm < report.threshold - slack ? Verdict::Violated : Verdict::Satisfied;
    report.finite_sample_violation_probability = violation_probability(probabilities, n_runs, exec);
    return report;
}

std::vector<double> binomial_pmf_prefix(std::uint64_t n, double p, std::size_t limit) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("probability outside [0, 1]");
    }
    const std::size_t size =
        static_cast<std::size_t>(std::min<std::uint64_t>(limit, n + 1));
    std::vector<double> pmf(size, 0.0);
    if (size == 0) {
        return pmf;
    }
    if (p == 0.0) {
        pmf[0] = 1.0;
        return pmf;
    }
    if (p == 1.0) {
        if (n < size) {
            pmf[n] = 1.0;
        }
        return pmf;
    }
    // Log-space recurrence so (1-p)^n may underflow without zeroing the
    // later terms.
    const double log_odds = std::log(p) - std::log1p(-p);
    double log_term = static_cast<double>(n) * std::log1p(-p);
    for (std::size_t k = 0; k < size; ++k) {
        pmf[k] = std::exp(log_term);
        log_term += std::log(static_cast<double>(n - k) / static_cast<double>(k + 1)) + log_odds;
    }
    return pmf;
}

double violation_probability(std::span<const double> p_list, std::uint64_t n_runs,
                             Execution exec) {
    if (p_list.empty()) {
        throw std::invalid_argument("probability list must not be empty");
    }
    if (n_runs == 0) {
        throw std::invalid_argument("n_runs must be >= 1");
    }
    for (double p : p_list) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("probability outside [0, 1]");
        }
    }
    const std::size_t support = p_list.size();
    std::vector<double> dist(support, 0.0);
    dist[0] = 1.0;
    for (double p : p_list) {
        const std::vector<double> pmf = binomial_pmf_prefix(n_runs, p, support);
        dist = kernels::convolve_truncated_parallel(dist, pmf, exec.threads);
    }
    double total = 0.0;
    for (double d : dist) {
        total += d;
    }
    return std::clamp(total, 0.0, 1.0);
}

AssumptionAudit audit_assumption(const AuditConfig& config, SeedSpec seed, Execution exec) {
    if (config.trials == 0) {
        throw std::invalid_argument("trials must be >= 1");
    }
    BatchConfig batch{config.model,
                      std::vector<AnglePair>(config.trials, AnglePair{config.theta_a, config.theta_b}),
                      config.n_runs, config.exclude_equal_angles};
    batch.validate();
    const auto results = kernels::run_experiments_parallel(batch.model, batch.angle_pairs,
                                                           batch.n_runs, seed, exec.threads);

    AssumptionAudit audit{config.model, canonical_difference(config.theta_a, config.theta_b),
                          config.n_runs, config.trials};
    audit.zero_m_count = static_cast<std::uint64_t>(
        std::count_if(results.begin(), results.end(), [](const auto& r) { return r.m() == 0; }));
    audit.zero_m_frequency =
        static_cast<double>(audit.zero_m_count) / static_cast<double>(config.trials);
    audit.all_m_positive = audit.zero_m_count == 0;
    return audit;
}

std::vector<SweepRow> sweep(const hv::ModelSpec& model, Angle theta_min, Angle theta_max,
                            std::uint64_t steps, std::uint64_t n_runs, SeedSpec seed,
                            Execution exec) {
    if (!(theta_min.radians() < theta_max.radians())) {
        throw std::invalid_argument("sweep requires theta_min < theta_max");
    }
    if (steps < 2) {
        throw std::invalid_argument("sweep requires steps >= 2");
    }
    if (n_runs == 0) {
        throw std::invalid_argument("n_runs must be >= 1");
    }
    const double lo = theta_min.radians();
    const double span = theta_max.radians() - lo;
    const double last = static_cast<double>(steps - 1);

    std::vector<AnglePair> pairs;
    pairs.reserve(steps);
    for (std::uint64_t i = 0; i < steps; ++i) {
        const double theta = i + 1 == steps ? theta_max.radians()
                                            : lo + span * (static_cast<double>(i) / last);
        pairs.push_back({Angle(theta), Angle(0.0)});
    }
    const auto results = kernels::run_experiments_parallel(model, pairs, n_runs, seed, exec.threads);

    std::vector<SweepRow> rows;
    rows.reserve(steps);
    for (std::size_t i = 0; i < results.size(); ++i) {
        SweepRow row;
        row.theta_ab = pairs[i].a;
        row.m = results[i].m();
        row.c_empirical = results[i].correlation();
        row.s_empirical = results[i].s();
        if (model.has_closed_form()) {
            row.c_exact = hv::exact_model_correlation(model, row.theta_ab);
            row.s_exact = hv::exact_model_s(model, row.theta_ab);
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace bellgamma::analysis
