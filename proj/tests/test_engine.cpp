#include <doctest.h>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "bellgamma/engine.hpp"
#include "bellgamma/kernels.hpp"

using namespace bellgamma;
using hv::ModelSpec;

namespace {

constexpr double kPi = std::numbers::pi;

BatchConfig replicated(const ModelSpec& model, double theta_ab, std::size_t experiments,
                       std::uint64_t runs) {
    return BatchConfig{model,
                       std::vector<AnglePair>(experiments, AnglePair{Angle(theta_ab), Angle(0.0)}),
                       runs, true};
}

} // namespace

TEST_CASE("run_experiment") {
    SUBCASE("equal settings give m = 0") {
        RandomStream s(1, 0);
        const auto r = run_experiment({ModelSpec::quantum(), Angle(0.4), Angle(0.4), 100}, s);
        CHECK(r.m() == 0);
        CHECK(r.correlation() == -1.0);
    }
    SUBCASE("opposite settings give m = n") {
        RandomStream s(1, 0);
        const auto r = run_experiment({ModelSpec::quantum(), Angle(kPi), Angle(0.0), 100}, s);
        CHECK(r.m() == 100);
        CHECK(r.correlation() == 1.0);
    }
    SUBCASE("orthogonal settings concentrate near n/2") {
        RandomStream s(2, 0);
        const auto r = run_experiment({ModelSpec::quantum(), Angle(kPi / 2), Angle(0.0), 10000}, s);
        CHECK(std::llabs(static_cast<long long>(r.m()) - 5000) <= 200);
    }
    SUBCASE("draws advance by n times the per-pair count") {
        for (const auto& model : {ModelSpec::quantum(), ModelSpec::bell_sign(),
                                  ModelSpec::noise(0.2), ModelSpec::quantum_mimic()}) {
            RandomStream s(3, 9);
            run_experiment({model, Angle(0.3), Angle(0.0), 77}, s);
            CHECK(s.draws() == 77u * model.draws_per_pair());
        }
    }
    RandomStream s(1, 0);
    CHECK_THROWS_AS(run_experiment({ModelSpec::quantum(), Angle(0.1), Angle(0.0), 0}, s),
                    std::invalid_argument);
}

TEST_CASE("run_batch examples") {
    SUBCASE("single opposite-setting experiment") {
        const auto b = run_batch(replicated(ModelSpec::quantum(), kPi, 1, 10), SeedSpec{5});
        CHECK(b.gamma() == 1.0);
        CHECK(b.threshold() == doctest::Approx(0.1));
        CHECK(b.verdict() == Verdict::Satisfied);
    }
    SUBCASE("bell-sign at pi/2 lands near N/2") {
        const auto b =
            run_batch(replicated(ModelSpec::bell_sign(), kPi / 2, 100, 10000), SeedSpec{17});
        CHECK(b.gamma() >= 45.0);
        CHECK(b.gamma() <= 55.0);
        CHECK(b.threshold() == 0.01);
        CHECK(b.verdict() == Verdict::Satisfied);
    }
}

TEST_CASE("batch validation") {
    auto cfg = replicated(ModelSpec::quantum(), 0.5, 3, 10);
    CHECK_NOTHROW(cfg.validate());

    cfg.angle_pairs.clear();
    CHECK_THROWS_AS(run_batch(cfg, SeedSpec{}), std::invalid_argument);

    cfg = replicated(ModelSpec::quantum(), 0.5, 3, 0);
    CHECK_THROWS_AS(run_batch(cfg, SeedSpec{}), std::invalid_argument);

    cfg = replicated(ModelSpec::quantum(), 0.5, 3, 10);
    cfg.angle_pairs[1] = {Angle(0.25), Angle(0.25)};
    CHECK_THROWS_AS(run_batch(cfg, SeedSpec{}), std::invalid_argument);
    cfg.angle_pairs[1] = {Angle(2.0 * kPi), Angle(0.0)};
    CHECK_THROWS_AS(run_batch(cfg, SeedSpec{}), std::invalid_argument);

    cfg.exclude_equal_angles = false;
    const auto b = run_batch(cfg, SeedSpec{});
    CHECK(b.experiments()[1].m() == 0);

    // Only the exact case is excluded.
    cfg = replicated(ModelSpec::quantum(), 1e-300, 2, 10);
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("batch results do not depend on thread count") {
    for (const auto& model : {ModelSpec::quantum(), ModelSpec::bell_sign(), ModelSpec::noise(0.1)}) {
        std::vector<AnglePair> pairs;
        for (int l = 0; l < 37; ++l) {
            pairs.push_back({Angle(0.05 * (l + 1)), Angle(-0.01 * l)});
        }
        const BatchConfig cfg{model, pairs, 2000, true};
        const auto one = run_batch(cfg, SeedSpec{99}, Execution{1});
        const auto eight = run_batch(cfg, SeedSpec{99}, Execution{8});
        const auto dflt = run_batch(cfg, SeedSpec{99});
        CHECK(one == eight);
        CHECK(one == dflt);
        CHECK(kernels::run_experiments_serial(model, pairs, 2000, SeedSpec{99}) == one.experiments());
        CHECK_FALSE(run_batch(cfg, SeedSpec{100}) == one);
    }
}

TEST_CASE("gamma is the exact integer ratio") {
    const auto b = run_batch(replicated(ModelSpec::quantum(), 0.9, 50, 333), SeedSpec{4});
    std::uint64_t sum = 0;
    for (const auto& e : b.experiments()) {
        sum += e.m();
    }
    CHECK(b.total_m() == sum);
    CHECK(b.gamma() == static_cast<double>(sum) / 333.0);
    CHECK((b.verdict() == Verdict::Satisfied) == (sum >= 50));
}

TEST_CASE("experiment substreams never share draws") {
    const std::uint64_t n = 40;
    const std::size_t experiments = 6;
    for (const auto& model : {ModelSpec::quantum(), ModelSpec::bell_sign(), ModelSpec::noise(0.2)}) {
        const SeedSpec seed{2718};
        std::set<std::uint64_t> all;
        std::size_t logged = 0;
        for (std::size_t l = 0; l < experiments; ++l) {
            RandomStream used = seed.stream(l);
            run_experiment({model, Angle(0.6), Angle(0.1), n}, used);
            REQUIRE(used.draws() == n * model.draws_per_pair());

            RandomStream replay = seed.stream(l);
            for (std::uint64_t d = 0; d < used.draws(); ++d) {
                all.insert(replay.next_u64());
                ++logged;
            }
        }
        CHECK(all.size() == logged);
    }
}

TEST_CASE("quantum counts follow Binomial(n, sin^2(theta/2))") {
    // 1000 experiments at theta = pi/3, n = 100: m_l ~ Binomial(100, 0.25).
    constexpr int kReps = 1000;
    constexpr unsigned kRuns = 100;
    const auto batch = run_batch(replicated(ModelSpec::quantum(), kPi / 3, kReps, kRuns),
                                 SeedSpec{31415});
    std::vector<int> observed(kRuns + 1, 0);
    for (const auto& e : batch.experiments()) {
        ++observed[e.m()];
    }

    const boost::math::binomial_distribution<double> law(kRuns, 0.25);
    // Pool adjacent cells until each has expected count >= 5.
    std::vector<double> exp_bins;
    std::vector<double> obs_bins;
    double e_acc = 0.0, o_acc = 0.0;
    for (unsigned k = 0; k <= kRuns; ++k) {
        e_acc += kReps * boost::math::pdf(law, k);
        o_acc += observed[k];
        if (e_acc >= 5.0) {
            exp_bins.push_back(e_acc);
            obs_bins.push_back(o_acc);
            e_acc = o_acc = 0.0;
        }
    }
    exp_bins.back() += e_acc;
    obs_bins.back() += o_acc;

    double chi2 = 0.0;
    for (std::size_t i = 0; i < exp_bins.size(); ++i) {
        chi2 += (obs_bins[i] - exp_bins[i]) * (obs_bins[i] - exp_bins[i]) / exp_bins[i];
    }
    const boost::math::chi_squared_distribution<double> ref(double(exp_bins.size() - 1));
    const double critical = boost::math::quantile(boost::math::complement(ref, 1e-3));
    CAPTURE(chi2);
    CAPTURE(critical);
    CHECK(chi2 < critical);
}
