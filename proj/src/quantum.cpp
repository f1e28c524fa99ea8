#include "bellgamma/quantum.hpp"

#include <cmath>

namespace bellgamma::quantum {

JointDistribution singlet_joint(Angle theta_ab) {
    const double s = exact_s(theta_ab);
    // p_pp = (1 - cos)/4 = sin^2/2, p_pm = (1 + cos)/4 = (1 - sin^2)/2
    JointDistribution d;
    d.p_pp = 0.5 * s;
    d.p_mm = d.p_pp;
    d.p_pm = 0.5 * (1.0 - s);
    d.p_mp = d.p_pm;
    return d;
}

double exact_correlation(Angle theta_ab) {
    return -std::cos(theta_ab.radians());
}

double exact_s(Angle theta_ab) {
    const double h = std::sin(theta_ab.radians() / 2.0);
    return h * h;
}

double exact_gamma(std::span<const Angle> theta_list) {
    // Neumaier-compensated, index order. Keeps N copies of 1/n on N/n to
    // within an ulp or so even for N ~ 1e3.
    double sum = 0.0;
    double carry = 0.0;
    for (Angle t : theta_list) {
        const double s = exact_s(t);
        const double next = sum + s;
        carry += std::fabs(sum) >= std::fabs(s) ? (sum - next) + s : (s - next) + sum;
        sum = next;
    }
    return sum + carry;
}

OutcomePair sample_pair(Angle theta_a, Angle theta_b, RandomStream& rng) {
    const double p_same = exact_s(canonical_difference(theta_a, theta_b));
    const Outcome a = rng.uniform() < 0.5 ? Outcome::plus() : Outcome::minus();
    const Outcome b = rng.uniform() < p_same ? a : a.flipped();
    return {a, b};
}

} // namespace bellgamma::quantum
