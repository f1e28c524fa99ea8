#pragma once

#include <cstdint>
#include <vector>

#include "bellgamma/core.hpp"
#include "bellgamma/hvmodels.hpp"
#include "bellgamma/random.hpp"

namespace bellgamma {

struct AnglePair {
    Angle a;
    Angle b;
};

struct ExperimentConfig {
    hv::ModelSpec model;
    Angle theta_a;
    Angle theta_b;
    std::uint64_t n_runs = 1;
};

struct BatchConfig {
    hv::ModelSpec model;
    std::vector<AnglePair> angle_pairs;
    std::uint64_t n_runs = 1;
    bool exclude_equal_angles = true;

    /// Throws std::invalid_argument on an empty batch, n_runs == 0, or an
    /// excluded pair whose canonical difference is exactly zero.
    void validate() const;
};

/// Experiment l draws from RandomStream(master_seed, l) and nothing else.
struct SeedSpec {
    std::uint64_t master_seed = 0;

    [[nodiscard]] RandomStream stream(std::uint64_t experiment_index) const {
        return RandomStream(master_seed, experiment_index);
    }
};

/// threads == 0 uses the OpenMP runtime default; 1 forces the serial path.
struct Execution {
    int threads = 0;
};

/// n pairs, each: sample lambda (if the model has one), then respond.
/// m counts pairs whose outcome product is +1.
ExperimentResult run_experiment(const ExperimentConfig& config, RandomStream& stream);

BatchResult run_batch(const BatchConfig& config, SeedSpec seed, Execution exec = {});

} // namespace bellgamma
