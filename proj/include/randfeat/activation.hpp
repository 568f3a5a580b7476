#pragma once

#include <string>

namespace randfeat {

enum class ActivationKind { Sigmoid, Tanh, Softplus, Relu };

std::string to_string(ActivationKind kind);
ActivationKind activation_kind_from_string(const std::string& name);

/// An activation with closed-form derivatives and declared polynomial growth.
/// |derivative(j, s)| <= C (1 + |s|)^growth for all supported j.
struct Activation {
    ActivationKind kind = ActivationKind::Tanh;
    int max_derivative_order = 0;
    double growth = 0.0;

    static Activation make(ActivationKind kind);
    static Activation tanh() { return make(ActivationKind::Tanh); }
    static Activation sigmoid() { return make(ActivationKind::Sigmoid); }
    static Activation softplus() { return make(ActivationKind::Softplus); }
    static Activation relu() { return make(ActivationKind::Relu); }

    /// j-th derivative at s; throws DerivativeOrderExceeded for j out of range.
    double derivative(int j, double s) const;
    double operator()(double s) const { return derivative(0, s); }
};

}  // namespace randfeat
