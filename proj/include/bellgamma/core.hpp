#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace bellgamma {

/// Measurement orientation in radians. Always finite.
class Angle {
  public:
    constexpr Angle() = default;
    explicit Angle(double radians);

    static Angle from_degrees(double degrees);

    [[nodiscard]] constexpr double radians() const { return radians_; }

    friend constexpr bool operator==(Angle, Angle) = default;

  private:
    double radians_ = 0.0;
};

/// |a - b| reduced to [0, pi]. Exact on the modular reduction (fmod).
Angle canonical_difference(Angle a, Angle b);

/// Single-side reduction of an arbitrary angle difference to [0, pi].
Angle canonical(Angle difference);

/// Dichotomic measurement result, +1 or -1.
class Outcome {
  public:
    static constexpr Outcome plus() { return Outcome(1); }
    static constexpr Outcome minus() { return Outcome(-1); }
    static Outcome from_int(int value);

    [[nodiscard]] constexpr int value() const { return value_; }
    [[nodiscard]] constexpr Outcome flipped() const { return Outcome(-value_); }

    friend constexpr bool operator==(Outcome, Outcome) = default;
    friend constexpr int operator*(Outcome a, Outcome b) { return a.value_ * b.value_; }

  private:
    constexpr explicit Outcome(int v) : value_(v) {}
    int value_ = 1;
};

struct OutcomePair {
    Outcome a = Outcome::plus();
    Outcome b = Outcome::plus();

    [[nodiscard]] constexpr int product() const { return a * b; }
    friend constexpr bool operator==(OutcomePair, OutcomePair) = default;
};

enum class Verdict { Satisfied, Violated };

std::string_view to_string(Verdict v);

double correlation_from_counts(std::uint64_t m, std::uint64_t n);
double s_from_correlation(double c);
double s_from_counts(std::uint64_t m, std::uint64_t n);

/// Index-ordered sum of S values, each in [0, 1].
double gamma(std::span<const double> s_values);

struct InequalityCheck {
    Verdict verdict = Verdict::Satisfied;
    double threshold = 0.0;
    double margin = 0.0;
};

/// Gamma >= N/n, equality satisfied.
InequalityCheck check_inequality(double gamma_value, std::uint64_t n_experiments,
                                 std::uint64_t n_runs);

/// Counts of one experiment. C and S are derived on demand from (m, n).
class ExperimentResult {
  public:
    ExperimentResult(std::uint64_t m, std::uint64_t n, Angle theta_a, Angle theta_b);

    [[nodiscard]] std::uint64_t m() const { return m_; }
    [[nodiscard]] std::uint64_t n() const { return n_; }
    [[nodiscard]] Angle theta_a() const { return theta_a_; }
    [[nodiscard]] Angle theta_b() const { return theta_b_; }
    [[nodiscard]] double correlation() const { return correlation_from_counts(m_, n_); }
    [[nodiscard]] double s() const { return s_from_counts(m_, n_); }

    friend bool operator==(const ExperimentResult&, const ExperimentResult&) = default;

  private:
    std::uint64_t m_;
    std::uint64_t n_;
    Angle theta_a_;
    Angle theta_b_;
};

/// N experiments with a shared run count. Gamma is (sum m_l)/n and the
/// verdict compares the integer numerator against N, so it never depends on
/// rounding.
class BatchResult {
  public:
    explicit BatchResult(std::vector<ExperimentResult> experiments);

    [[nodiscard]] const std::vector<ExperimentResult>& experiments() const { return experiments_; }
    [[nodiscard]] std::uint64_t n_experiments() const { return experiments_.size(); }
    [[nodiscard]] std::uint64_t n_runs() const { return n_runs_; }
    [[nodiscard]] std::uint64_t total_m() const { return total_m_; }
    [[nodiscard]] double gamma() const;
    [[nodiscard]] double threshold() const;
    [[nodiscard]] double margin() const { return gamma() - threshold(); }
    [[nodiscard]] Verdict verdict() const;

    friend bool operator==(const BatchResult&, const BatchResult&) = default;

  private:
    std::vector<ExperimentResult> experiments_;
    std::uint64_t n_runs_ = 0;
    std::uint64_t total_m_ = 0;
};

} // namespace bellgamma
