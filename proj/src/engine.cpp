#include "bellgamma/engine.hpp"

#include <string>

#include "bellgamma/kernels.hpp"

namespace bellgamma {

void BatchConfig::validate() const {
    if (angle_pairs.empty()) {
        throw std::invalid_argument("batch needs at least one experiment");
    }
    if (n_runs == 0) {
        throw std::invalid_argument("n_runs must be >= 1");
    }
    if (exclude_equal_angles) {
        for (std::size_t l = 0; l < angle_pairs.size(); ++l) {
            if (canonical_difference(angle_pairs[l].a, angle_pairs[l].b).radians() == 0.0) {
                throw std::invalid_argument("experiment " + std::to_string(l) +
                                            " has equal angles (excluded deterministic case)");
            }
        }
    }
}

ExperimentResult run_experiment(const ExperimentConfig& config, RandomStream& stream) {
    if (config.n_runs == 0) {
        throw std::invalid_argument("n_runs must be >= 1");
    }
    std::uint64_t m = 0;
    for (std::uint64_t i = 0; i < config.n_runs; ++i) {
        const hv::HiddenVariable lambda = hv::sample_hidden(config.model, stream);
        const OutcomePair r = hv::respond(config.model, config.theta_a, config.theta_b, lambda, stream);
        m += r.product() > 0 ? 1 : 0;
    }
    return ExperimentResult(m, config.n_runs, config.theta_a, config.theta_b);
}

BatchResult run_batch(const BatchConfig& config, SeedSpec seed, Execution exec) {
    config.validate();
    return BatchResult(kernels::run_experiments_parallel(config.model, config.angle_pairs,
                                                         config.n_runs, seed, exec.threads));
}

} // namespace bellgamma
