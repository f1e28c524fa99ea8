#include "bellgamma/core.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace bellgamma {

namespace {

constexpr double kCorrelationSlack = 1e-12;

void require_counts(std::uint64_t m, std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("run count n must be >= 1");
    }
    if (m > n) {
        throw std::invalid_argument("count m=" + std::to_string(m) + " exceeds n=" +
                                    std::to_string(n));
    }
}

} // namespace

Angle::Angle(double radians) : radians_(radians) {
    if (!std::isfinite(radians)) {
        throw std::invalid_argument("angle must be finite");
    }
}

Angle Angle::from_degrees(double degrees) {
    return Angle(degrees * (std::numbers::pi / 180.0));
}

Angle canonical(Angle difference) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double d = std::fabs(std::fmod(difference.radians(), two_pi));
    if (d > std::numbers::pi) {
        d = two_pi - d;
    }
    return Angle(d);
}

Angle canonical_difference(Angle a, Angle b) {
    return canonical(Angle(a.radians() - b.radians()));
}

Outcome Outcome::from_int(int value) {
    if (value != 1 && value != -1) {
        throw std::invalid_argument("outcome must be +1 or -1, got " + std::to_string(value));
    }
    return Outcome(value);
}

std::string_view to_string(Verdict v) {
    return v == Verdict::Satisfied ? "SATISFIED" : "VIOLATED";
}

double correlation_from_counts(std::uint64_t m, std::uint64_t n) {
    require_counts(m, n);
    return 2.0 * static_cast<double>(m) / static_cast<double>(n) - 1.0;
}

double s_from_correlation(double c) {
    if (!(c >= -1.0 - kCorrelationSlack && c <= 1.0 + kCorrelationSlack)) {
        throw std::invalid_argument("correlation outside [-1, 1]");
    }
    return (1.0 + c) / 2.0;
}

double s_from_counts(std::uint64_t m, std::uint64_t n) {
    require_counts(m, n);
    return static_cast<double>(m) / static_cast<double>(n);
}

double gamma(std::span<const double> s_values) {
    double sum = 0.0;
    for (double s : s_values) {
        if (!(s >= 0.0 && s <= 1.0)) {
            throw std::invalid_argument("S value outside [0, 1]");
        }
        sum += s;
    }
    return sum;
}

InequalityCheck check_inequality(double gamma_value, std::uint64_t n_experiments,
                                 std::uint64_t n_runs) {
    if (n_experiments == 0 || n_runs == 0) {
        throw std::invalid_argument("experiment and run counts must be >= 1");
    }
    InequalityCheck out;
    out.threshold = static_cast<double>(n_experiments) / static_cast<double>(n_runs);
    out.margin = gamma_value - out.threshold;
    out.verdict = gamma_value >= out.threshold ? Verdict::Satisfied : Verdict::Violated;
    return out;
}

ExperimentResult::ExperimentResult(std::uint64_t m, std::uint64_t n, Angle theta_a,
                                   Angle theta_b)
    : m_(m), n_(n), theta_a_(theta_a), theta_b_(theta_b) {
    require_counts(m, n);
}

BatchResult::BatchResult(std::vector<ExperimentResult> experiments)
    : experiments_(std::move(experiments)) {
    if (experiments_.empty()) {
        throw std::invalid_argument("a batch needs at least one experiment");
    }
    n_runs_ = experiments_.front().n();
    for (const auto& e : experiments_) {
        if (e.n() != n_runs_) {
            throw std::invalid_argument("all experiments in a batch must share n");
        }
        total_m_ += e.m();
    }
}

double BatchResult::gamma() const {
    return static_cast<double>(total_m_) / static_cast<double>(n_runs_);
}

double BatchResult::threshold() const {
    return static_cast<double>(n_experiments()) / static_cast<double>(n_runs_);
}

Verdict BatchResult::verdict() const {
    // (sum m)/n >= N/n  <=>  sum m >= N
    return total_m_ >= n_experiments() ? Verdict::Satisfied : Verdict::Violated;
}

} // namespace bellgamma
