#include "bellgamma/hvmodels.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "bellgamma/quantum.hpp"

namespace bellgamma::hv {

namespace {

Outcome sign_of_cos(double x) {
    return std::cos(x) >= 0.0 ? Outcome::plus() : Outcome::minus();
}

[[noreturn]] void bad_kind() {
    throw std::invalid_argument("invalid model kind");
}

} // namespace

ModelSpec ModelSpec::noise(double flip_probability) {
    if (!(flip_probability >= 0.0 && flip_probability <= 0.5)) {
        throw std::invalid_argument("noise flip probability q must lie in [0, 0.5]");
    }
    return ModelSpec(ModelKind::NoiseLocal, flip_probability);
}

ModelSpec ModelSpec::from_kind(ModelKind kind, double flip_probability) {
    switch (kind) {
    case ModelKind::Quantum:
        return quantum();
    case ModelKind::BellSignLocal:
        return bell_sign();
    case ModelKind::NoiseLocal:
        return noise(flip_probability);
    case ModelKind::QuantumMimicNonlocal:
        return quantum_mimic();
    }
    bad_kind();
}

ModelSpec ModelSpec::parse(const std::string& text) {
    if (text == "quantum") {
        return quantum();
    }
    if (text == "bell-sign") {
        return bell_sign();
    }
    if (text == "quantum-mimic") {
        return quantum_mimic();
    }
    constexpr std::string_view prefix = "noise:q=";
    if (text.starts_with(prefix)) {
        const std::string value = text.substr(prefix.size());
        std::size_t used = 0;
        double q = 0.0;
        try {
            q = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (value.empty() || used != value.size()) {
            throw std::invalid_argument("malformed noise parameter in model '" + text + "'");
        }
        return noise(q);
    }
    throw std::invalid_argument("unknown model '" + text +
                                "' (expected quantum | bell-sign | noise:q=<real> | quantum-mimic)");
}

bool ModelSpec::is_local() const {
    return kind_ == ModelKind::BellSignLocal || kind_ == ModelKind::NoiseLocal;
}

bool ModelSpec::uses_hidden_variable() const {
    return is_local();
}

bool ModelSpec::has_closed_form() const {
    switch (kind_) {
    case ModelKind::Quantum:
    case ModelKind::BellSignLocal:
    case ModelKind::NoiseLocal:
    case ModelKind::QuantumMimicNonlocal:
        return true;
    }
    return false;
}

unsigned ModelSpec::draws_per_pair() const {
    switch (kind_) {
    case ModelKind::Quantum:
    case ModelKind::QuantumMimicNonlocal:
        return 2;
    case ModelKind::BellSignLocal:
        return 1;
    case ModelKind::NoiseLocal:
        return 3;
    }
    bad_kind();
}

std::string ModelSpec::name() const {
    switch (kind_) {
    case ModelKind::Quantum:
        return "quantum";
    case ModelKind::BellSignLocal:
        return "bell-sign";
    case ModelKind::NoiseLocal: {
        char buf[40];
        const auto r = std::to_chars(buf, buf + sizeof buf, q_);
        return "noise:q=" + std::string(buf, r.ptr);
    }
    case ModelKind::QuantumMimicNonlocal:
        return "quantum-mimic";
    }
    bad_kind();
}

HiddenVariable sample_hidden(const ModelSpec& model, RandomStream& rng) {
    if (!model.uses_hidden_variable()) {
        return {};
    }
    return {2.0 * std::numbers::pi * rng.uniform()};
}

OutcomePair respond(const ModelSpec& model, Angle theta_a, Angle theta_b, HiddenVariable lambda,
                    RandomStream& rng) {
    switch (model.kind()) {
    case ModelKind::Quantum:
    case ModelKind::QuantumMimicNonlocal:
        return quantum::sample_pair(theta_a, theta_b, rng);
    case ModelKind::BellSignLocal:
        return {sign_of_cos(lambda.lambda - theta_a.radians()),
                sign_of_cos(lambda.lambda - theta_b.radians()).flipped()};
    case ModelKind::NoiseLocal: {
        OutcomePair out{sign_of_cos(lambda.lambda - theta_a.radians()),
                        sign_of_cos(lambda.lambda - theta_b.radians()).flipped()};
        // Both flip draws are always consumed.
        const double ua = rng.uniform();
        const double ub = rng.uniform();
        if (ua < model.flip_probability()) {
            out.a = out.a.flipped();
        }
        if (ub < model.flip_probability()) {
            out.b = out.b.flipped();
        }
        return out;
    }
    }
    bad_kind();
}

double exact_model_correlation(const ModelSpec& model, Angle theta_ab) {
    const double theta = canonical(theta_ab).radians();
    switch (model.kind()) {
    case ModelKind::Quantum:
    case ModelKind::QuantumMimicNonlocal:
        return quantum::exact_correlation(theta_ab);
    case ModelKind::BellSignLocal:
        return -1.0 + 2.0 * theta / std::numbers::pi;
    case ModelKind::NoiseLocal: {
        const double shrink = 1.0 - 2.0 * model.flip_probability();
        return shrink * shrink * (-1.0 + 2.0 * theta / std::numbers::pi);
    }
    }
    throw UnsupportedOperation("model has no closed-form correlation");
}

double exact_model_s(const ModelSpec& model, Angle theta_ab) {
    if (model.kind() == ModelKind::Quantum || model.kind() == ModelKind::QuantumMimicNonlocal) {
        return quantum::exact_s(theta_ab);
    }
    return s_from_correlation(exact_model_correlation(model, theta_ab));
}

} // namespace bellgamma::hv
