#pragma once

#include <span>

#include "bellgamma/core.hpp"
#include "bellgamma/random.hpp"

namespace bellgamma::quantum {

/// Singlet outcome-pair probabilities, P(rA, rB) = (1 - rA rB cos theta)/4.
struct JointDistribution {
    double p_pp = 0.0;
    double p_pm = 0.0;
    double p_mp = 0.0;
    double p_mm = 0.0;

    [[nodiscard]] double correlation() const { return p_pp + p_mm - p_pm - p_mp; }
};

JointDistribution singlet_joint(Angle theta_ab);

/// -cos(theta_ab)
double exact_correlation(Angle theta_ab);

/// sin^2(theta_ab / 2)
double exact_s(Angle theta_ab);

/// Sum of sin^2(theta_l / 2) in index order, compensated.
double exact_gamma(std::span<const Angle> theta_list);

/// Consumes exactly two uniforms: the first fixes side A, the second decides
/// whether B agrees (probability sin^2(theta_ab/2)) or disagrees.
OutcomePair sample_pair(Angle theta_a, Angle theta_b, RandomStream& rng);

} // namespace bellgamma::quantum
