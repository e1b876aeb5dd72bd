#pragma once

#include <string_view>

namespace gramian_lens {

enum class ActivationKind { identity, relu, sigmoid, tanh, silu, gelu };

// sigma(z). Exact formulas: identity z; relu max(z,0); sigmoid the logistic
// function; tanh; silu z*sigmoid(z); gelu z*Phi(z) with Phi the standard
// normal CDF (erf-based, not the tanh approximation).
// Throws std::domain_error for non-finite z.
double act_value(ActivationKind kind, double z);

// Analytic first derivative sigma'(z). relu'(0) is defined as 0.
// Throws std::domain_error for non-finite z.
double act_deriv(ActivationKind kind, double z);

// Lowercase tag used in model files and reports. "swiglu" parses as an alias
// of silu; activation_name always returns the normalized tag.
// parse_activation throws ParseError on an unknown tag.
ActivationKind parse_activation(std::string_view tag);
std::string_view activation_name(ActivationKind kind);

}  // namespace gramian_lens
