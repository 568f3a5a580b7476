#include "randfeat/activation.hpp"

#include <cmath>

#include "randfeat/errors.hpp"

namespace randfeat {

std::string to_string(ActivationKind kind) {
    switch (kind) {
        case ActivationKind::Sigmoid: return "sigmoid";
        case ActivationKind::Tanh: return "tanh";
        case ActivationKind::Softplus: return "softplus";
        case ActivationKind::Relu: return "relu";
    }
    return "?";
}

ActivationKind activation_kind_from_string(const std::string& name) {
    if (name == "sigmoid") return ActivationKind::Sigmoid;
    if (name == "tanh") return ActivationKind::Tanh;
    if (name == "softplus") return ActivationKind::Softplus;
    if (name == "relu") return ActivationKind::Relu;
    throw ConfigError("unknown activation: " + name);
}

Activation Activation::make(ActivationKind kind) {
    Activation a;
    a.kind = kind;
    switch (kind) {
        case ActivationKind::Sigmoid:
            a.max_derivative_order = 4;
            a.growth = 0.0;
            break;
        case ActivationKind::Tanh:
            a.max_derivative_order = 4;
            a.growth = 0.0;
            break;
        case ActivationKind::Softplus:
            a.max_derivative_order = 4;
            a.growth = 1.0;
            break;
        case ActivationKind::Relu:
            a.max_derivative_order = 0;
            a.growth = 1.0;
            break;
    }
    return a;
}

namespace {

double stable_sigmoid(double s) {
    if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
    const double e = std::exp(s);
    return e / (1.0 + e);
}

double stable_softplus(double s) {
    if (s > 0.0) return s + std::log1p(std::exp(-s));
    return std::log1p(std::exp(s));
}

// Derivatives of the logistic function as polynomials in S = sigma(s).
double sigmoid_chain(int j, double S) {
    switch (j) {
        case 0: return S;
        case 1: return S * (1.0 - S);
        case 2: return S * (1.0 - S) * (1.0 - 2.0 * S);
        case 3: return S * (1.0 - S) * (1.0 - 6.0 * S + 6.0 * S * S);
        default:
            return S * (1.0 - S) * (1.0 - 2.0 * S) * (1.0 - 12.0 * S + 12.0 * S * S);
    }
}

}  // namespace

double Activation::derivative(int j, double s) const {
    if (j < 0 || j > max_derivative_order) {
        throw DerivativeOrderExceeded("activation " + to_string(kind) +
                                      " supports derivatives up to order " +
                                      std::to_string(max_derivative_order) +
                                      ", requested " + std::to_string(j));
    }
    switch (kind) {
        case ActivationKind::Sigmoid:
            return sigmoid_chain(j, stable_sigmoid(s));
        case ActivationKind::Tanh: {
            const double T = std::tanh(s);
            const double D = 1.0 - T * T;
            switch (j) {
                case 0: return T;
                case 1: return D;
                case 2: return -2.0 * T * D;
                case 3: return D * (6.0 * T * T - 2.0);
                default: return 8.0 * T * D * (2.0 - 3.0 * T * T);
            }
        }
        case ActivationKind::Softplus:
            if (j == 0) return stable_softplus(s);
            return sigmoid_chain(j - 1, stable_sigmoid(s));
        case ActivationKind::Relu:
            return std::max(s, 0.0);
    }
    return 0.0;
}

}  // namespace randfeat
