#include "randfeat/features.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "randfeat/errors.hpp"

namespace randfeat {

namespace {

// cos^{(j)} and sin^{(j)} cycle with period 4
double cos_derivative(int j, double t) {
    switch (j & 3) {
        case 0: return std::cos(t);
        case 1: return -std::sin(t);
        case 2: return -std::cos(t);
        default: return std::sin(t);
    }
}

double sin_derivative(int j, double t) {
    switch (j & 3) {
        case 0: return std::sin(t);
        case 1: return std::cos(t);
        case 2: return -std::sin(t);
        default: return -std::cos(t);
    }
}

}  // namespace

double trig_feature_eval(TrigKind h, const Eigen::VectorXd& theta,
                         const Eigen::VectorXd& u, const MultiIndex& alpha) {
    assert(theta.size() == u.size() && alpha.dim() == theta.size());
    const double t = theta.dot(u);
    const int j = alpha.order();
    const double head = (h == TrigKind::Cos) ? cos_derivative(j, t) : sin_derivative(j, t);
    return head * monomial(theta, alpha);
}

double neuron_feature_eval(const Activation& rho, const Eigen::VectorXd& a, double b,
                           const Eigen::VectorXd& u, const MultiIndex& alpha) {
    assert(a.size() == u.size() && alpha.dim() == a.size());
    const double s = a.dot(u) - b;
    return rho.derivative(alpha.order(), s) * monomial(a, alpha);
}

std::complex<double> fourier_feature_eval(const Eigen::VectorXd& theta,
                                          const Eigen::VectorXd& u,
                                          const MultiIndex& alpha) {
    assert(theta.size() == u.size() && alpha.dim() == theta.size());
    static const std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const double t = theta.dot(u);
    return i_pow[alpha.order() & 3] * monomial(theta, alpha) *
           std::complex<double>(std::cos(t), std::sin(t));
}

std::string to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::Trig: return "trig";
        case FamilyKind::Fourier: return "fourier";
        case FamilyKind::Neuron: return "neuron";
    }
    return "?";
}

FeatureFamily FeatureFamily::trig(int m) {
    FeatureFamily f;
    f.kind = FamilyKind::Trig;
    f.input_dim = m;
    return f;
}

FeatureFamily FeatureFamily::fourier(int m) {
    FeatureFamily f;
    f.kind = FamilyKind::Fourier;
    f.input_dim = m;
    return f;
}

FeatureFamily FeatureFamily::neuron(int m, const Activation& rho) {
    FeatureFamily f;
    f.kind = FamilyKind::Neuron;
    f.input_dim = m;
    f.activation = rho;
    return f;
}

int FeatureFamily::count() const {
    return kind == FamilyKind::Trig ? 2 : 1;
}

int FeatureFamily::param_dim() const {
    return kind == FamilyKind::Neuron ? input_dim + 1 : input_dim;
}

int FeatureFamily::max_order() const {
    return kind == FamilyKind::Neuron ? activation.max_derivative_order
                                      : std::numeric_limits<int>::max();
}

double FeatureFamily::eval(int l, const Eigen::VectorXd& theta, const Eigen::VectorXd& u,
                           const MultiIndex& alpha) const {
    switch (kind) {
        case FamilyKind::Trig:
            return trig_feature_eval(l == 0 ? TrigKind::Cos : TrigKind::Sin, theta, u, alpha);
        case FamilyKind::Neuron:
            return neuron_feature_eval(activation, theta.head(input_dim), theta[input_dim],
                                       u, alpha);
        case FamilyKind::Fourier:
            throw InvalidTarget("fourier family is complex-valued; use eval_complex");
    }
    return 0.0;
}

std::complex<double> FeatureFamily::eval_complex(const Eigen::VectorXd& theta,
                                                 const Eigen::VectorXd& u,
                                                 const MultiIndex& alpha) const {
    if (kind != FamilyKind::Fourier) {
        return {eval(0, theta, u, alpha), 0.0};
    }
    return fourier_feature_eval(theta, u, alpha);
}

}  // namespace randfeat
