#include "gramian_lens/activations.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gramian_lens/errors.hpp"

namespace gramian_lens {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double logistic(double z) {
    // Evaluate through exp(-|z|) so large |z| never overflows.
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z * kInvSqrt2);
}

double normal_pdf(double z) {
    return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

void require_finite(double z) {
    if (!std::isfinite(z)) {
        throw std::domain_error("activation input is not finite");
    }
}

}  // namespace

double act_value(ActivationKind kind, double z) {
    require_finite(z);
    switch (kind) {
        case ActivationKind::identity:
            return z;
        case ActivationKind::relu:
            return z > 0.0 ? z : 0.0;
        case ActivationKind::sigmoid:
            return logistic(z);
        case ActivationKind::tanh:
            return std::tanh(z);
        case ActivationKind::silu:
            return z * logistic(z);
        case ActivationKind::gelu:
            return z * normal_cdf(z);
    }
    throw std::domain_error("unknown activation kind");
}

double act_deriv(ActivationKind kind, double z) {
    require_finite(z);
    switch (kind) {
        case ActivationKind::identity:
            return 1.0;
        case ActivationKind::relu:
            return z > 0.0 ? 1.0 : 0.0;
        case ActivationKind::sigmoid: {
            const double s = logistic(z);
            return s * (1.0 - s);
        }
        case ActivationKind::tanh: {
            const double t = std::tanh(z);
            return 1.0 - t * t;
        }
        case ActivationKind::silu: {
            const double s = logistic(z);
            return s * (1.0 + z * (1.0 - s));
        }
        case ActivationKind::gelu:
            return normal_cdf(z) + z * normal_pdf(z);
    }
    throw std::domain_error("unknown activation kind");
}

ActivationKind parse_activation(std::string_view tag) {
    if (tag == "identity") return ActivationKind::identity;
    if (tag == "relu") return ActivationKind::relu;
    if (tag == "sigmoid") return ActivationKind::sigmoid;
    if (tag == "tanh") return ActivationKind::tanh;
    if (tag == "silu" || tag == "swiglu") return ActivationKind::silu;
    if (tag == "gelu") return ActivationKind::gelu;
    throw ParseError("unknown activation tag \"" + std::string(tag) + "\"");
}

std::string_view activation_name(ActivationKind kind) {
    switch (kind) {
        case ActivationKind::identity: return "identity";
        case ActivationKind::relu: return "relu";
        case ActivationKind::sigmoid: return "sigmoid";
        case ActivationKind::tanh: return "tanh";
        case ActivationKind::silu: return "silu";
        case ActivationKind::gelu: return "gelu";
    }
    return "unknown";
}

}  // namespace gramian_lens
