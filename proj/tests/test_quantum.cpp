#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "bellgamma/quantum.hpp"

using namespace bellgamma;
using namespace bellgamma::quantum;

namespace {

constexpr double kPi = std::numbers::pi;

struct Tally {
    double mean_product = 0.0;
    double mean_a = 0.0;
    double mean_b = 0.0;
};

Tally tally(double theta_a, double theta_b, std::uint64_t n, std::uint64_t seed) {
    RandomStream rng(seed, 0);
    long long prod = 0, sa = 0, sb = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto r = sample_pair(Angle(theta_a), Angle(theta_b), rng);
        prod += r.product();
        sa += r.a.value();
        sb += r.b.value();
    }
    const double dn = static_cast<double>(n);
    return {prod / dn, sa / dn, sb / dn};
}

} // namespace

TEST_CASE("singlet_joint") {
    const auto equal = singlet_joint(Angle(0.0));
    CHECK(equal.p_pp == 0.0);
    CHECK(equal.p_mm == 0.0);
    CHECK(equal.p_pm == 0.5);
    CHECK(equal.p_mp == 0.5);

    const auto orth = singlet_joint(Angle(kPi / 2));
    for (double p : {orth.p_pp, orth.p_pm, orth.p_mp, orth.p_mm}) {
        CHECK(p == doctest::Approx(0.25).epsilon(1e-15));
    }

    // (1 - cos(pi/3))/4 = 0.125 and (1 + cos(pi/3))/4 = 0.375
    const auto third = singlet_joint(Angle(kPi / 3));
    CHECK(third.p_pp == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(third.p_mm == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(third.p_pm == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(third.p_mp == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(third.correlation() == doctest::Approx(-0.5).epsilon(1e-14));

    CHECK_THROWS_AS(singlet_joint(Angle(std::nan(""))), std::invalid_argument);
}

TEST_CASE("joint distribution invariants over random angles") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> wide(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const double theta = wide(gen);
        const auto d = singlet_joint(Angle(theta));
        for (double p : {d.p_pp, d.p_pm, d.p_mp, d.p_mm}) {
            REQUIRE(p >= 0.0);
            REQUIRE(p <= 0.5);
        }
        REQUIRE(std::fabs(d.p_pp + d.p_pm + d.p_mp + d.p_mm - 1.0) <= 1e-12);
        REQUIRE(d.p_pp == d.p_mm);
        REQUIRE(d.p_pm == d.p_mp);
        REQUIRE(std::fabs(d.p_pp + d.p_pm - 0.5) <= 1e-12);
        REQUIRE(std::fabs(d.correlation() + std::cos(theta)) <= 1e-12);
    }
}

TEST_CASE("exact correlation, S and gamma") {
    CHECK(exact_correlation(Angle(0.0)) == -1.0);
    CHECK(std::fabs(exact_correlation(Angle(kPi / 2))) < 1e-15);
    CHECK(exact_correlation(Angle(kPi / 3)) == doctest::Approx(-0.5).epsilon(1e-15));

    CHECK(exact_s(Angle(0.0)) == 0.0);
    CHECK(exact_s(Angle(kPi)) == 1.0);
    CHECK(exact_s(Angle(kPi / 2)) == doctest::Approx(0.5).epsilon(1e-15));

    CHECK(exact_gamma({}) == 0.0);
    const std::vector<Angle> two_pi{Angle(kPi), Angle(kPi)};
    CHECK(exact_gamma(two_pi) == 2.0);
    // 100 sin^2(0.005) = 2.4999791667361109871e-3 (40-digit reference)
    const std::vector<Angle> small(100, Angle(0.01));
    CHECK(exact_gamma(small) == doctest::Approx(2.4999791667361109871e-3).epsilon(1e-13));
}

TEST_CASE("half-angle identity") {
    for (int i = 0; i <= 2000; ++i) {
        const Angle theta(-2.0 * kPi + 4.0 * kPi * i / 2000.0);
        REQUIRE(std::fabs(exact_s(theta) - s_from_correlation(exact_correlation(theta))) <= 1e-12);
    }
}

TEST_CASE("sample_pair deterministic edge angles") {
    RandomStream rng(5, 0);
    for (int i = 0; i < 10000; ++i) {
        const auto same = sample_pair(Angle(0.7), Angle(0.7), rng);
        REQUIRE(same.a != same.b);
        const auto opposite = sample_pair(Angle(kPi + 0.2), Angle(0.2), rng);
        REQUIRE(opposite.a == opposite.b);
    }
}

TEST_CASE("sample_pair consumes exactly two draws") {
    RandomStream rng(1, 3);
    sample_pair(Angle(0.4), Angle(1.1), rng);
    CHECK(rng.draws() == 2);
    sample_pair(Angle(0.0), Angle(0.0), rng);
    CHECK(rng.draws() == 4);
}

TEST_CASE("sampler matches -cos within 4 standard errors") {
    // Orthogonal settings: C = 0, SE = 1/sqrt(n) = 0.001 at n = 1e6.
    CHECK(std::fabs(tally(kPi / 2, 0.0, 1'000'000, 77).mean_product) < 0.004);

    std::mt19937_64 gen(123);
    std::uniform_real_distribution<double> angle(0.0, kPi);
    std::uint64_t seed = 1000;
    for (std::uint64_t n : {10'000u, 100'000u}) {
        for (int i = 0; i < 10; ++i) {
            const double theta = angle(gen);
            const double c = -std::cos(theta);
            const Tally t = tally(theta, 0.0, n, ++seed);
            const double tol = 4.0 * std::sqrt((1.0 - c * c) / static_cast<double>(n));
            CHECK(std::fabs(t.mean_product - c) <= tol + 1e-12);
            CHECK(std::fabs(t.mean_a) <= 4.0 / std::sqrt(static_cast<double>(n)));
            CHECK(std::fabs(t.mean_b) <= 4.0 / std::sqrt(static_cast<double>(n)));
        }
    }
}

TEST_CASE("sampler is deterministic for a fixed seed") {
    RandomStream a(9, 4), b(9, 4);
    for (int i = 0; i < 1000; ++i) {
        const Angle ta(0.001 * i), tb(0.3);
        REQUIRE(sample_pair(ta, tb, a) == sample_pair(ta, tb, b));
    }
}
