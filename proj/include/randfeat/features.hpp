#pragma once

#include <Eigen/Dense>
#include <complex>

#include "randfeat/activation.hpp"
#include "randfeat/multi_index.hpp"

namespace randfeat {

enum class TrigKind { Cos, Sin };

/// partial_alpha h(theta^T u) = h^{(|alpha|)}(theta^T u) theta^alpha
double trig_feature_eval(TrigKind h, const Eigen::VectorXd& theta,
                         const Eigen::VectorXd& u, const MultiIndex& alpha);

/// partial_alpha rho(a^T u - b) = rho^{(|alpha|)}(a^T u - b) a^alpha
double neuron_feature_eval(const Activation& rho, const Eigen::VectorXd& a, double b,
                           const Eigen::VectorXd& u, const MultiIndex& alpha);

/// partial_alpha exp(i theta^T u) = (i theta)^alpha exp(i theta^T u)
std::complex<double> fourier_feature_eval(const Eigen::VectorXd& theta,
                                          const Eigen::VectorXd& u,
                                          const MultiIndex& alpha);

enum class FamilyKind { Trig, Fourier, Neuron };

std::string to_string(FamilyKind kind);

/// A parametrized family of scalar feature maps, evaluable with all partial
/// derivatives. Trig has two members (cos, sin), Fourier one complex member,
/// Neuron one member per activation.
struct FeatureFamily {
    FamilyKind kind = FamilyKind::Trig;
    int input_dim = 1;
    Activation activation;  // neuron only

    static FeatureFamily trig(int m);
    static FeatureFamily fourier(int m);
    static FeatureFamily neuron(int m, const Activation& rho);

    /// Number e of real scalar members (fourier counts its single complex map).
    int count() const;
    /// Dimension of the parameter space Theta: m for trig/fourier, m + 1 for
    /// neuron (weights stacked over bias).
    int param_dim() const;
    /// Highest supported derivative order (unbounded for trig/fourier).
    int max_order() const;

    /// Member l evaluated with derivative alpha (real families).
    double eval(int l, const Eigen::VectorXd& theta, const Eigen::VectorXd& u,
                const MultiIndex& alpha) const;
    std::complex<double> eval_complex(const Eigen::VectorXd& theta,
                                      const Eigen::VectorXd& u,
                                      const MultiIndex& alpha) const;
};

}  // namespace randfeat
