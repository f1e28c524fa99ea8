#pragma once

#include <stdexcept>
#include <string>

#include "bellgamma/core.hpp"
#include "bellgamma/random.hpp"

namespace bellgamma::hv {

/// Raised when a model has no closed-form prediction for a quantity.
class UnsupportedOperation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

enum class ModelKind {
    Quantum,
    BellSignLocal,
    NoiseLocal,
    QuantumMimicNonlocal,
};

struct HiddenVariable {
    double lambda = 0.0;
};

/// Immutable pair-response model. Construct through the named factories,
/// which validate parameters.
class ModelSpec {
  public:
    static ModelSpec quantum() { return ModelSpec(ModelKind::Quantum, 0.0); }
    static ModelSpec bell_sign() { return ModelSpec(ModelKind::BellSignLocal, 0.0); }
    static ModelSpec noise(double flip_probability);
    static ModelSpec quantum_mimic() { return ModelSpec(ModelKind::QuantumMimicNonlocal, 0.0); }
    /// Checked construction from a raw kind; rejects out-of-range enum values.
    static ModelSpec from_kind(ModelKind kind, double flip_probability = 0.0);

    /// Parses `quantum`, `bell-sign`, `noise:q=<real>` or `quantum-mimic`.
    static ModelSpec parse(const std::string& text);

    [[nodiscard]] ModelKind kind() const { return kind_; }
    [[nodiscard]] double flip_probability() const { return q_; }

    /// Local models satisfy rA = rA(thetaA, lambda), rB = rB(thetaB, lambda).
    [[nodiscard]] bool is_local() const;
    [[nodiscard]] bool uses_hidden_variable() const;
    [[nodiscard]] bool has_closed_form() const;
    /// Uniform draws consumed by one sample_hidden + respond cycle.
    [[nodiscard]] unsigned draws_per_pair() const;
    [[nodiscard]] std::string name() const;

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;

  private:
    ModelSpec(ModelKind kind, double q) : kind_(kind), q_(q) {}

    ModelKind kind_;
    double q_;
};

/// Lambda uniform on [0, 2pi) for local built-ins; models without a hidden
/// variable return 0 and draw nothing.
HiddenVariable sample_hidden(const ModelSpec& model, RandomStream& rng);

/// Outcome pair for one particle pair. Every model receives both angles;
/// local kinds read only their own side.
OutcomePair respond(const ModelSpec& model, Angle theta_a, Angle theta_b, HiddenVariable lambda,
                    RandomStream& rng);

double exact_model_correlation(const ModelSpec& model, Angle theta_ab);

/// Closed-form S; the quantum kinds use the half-angle form sin^2(theta/2).
double exact_model_s(const ModelSpec& model, Angle theta_ab);

} // namespace bellgamma::hv
