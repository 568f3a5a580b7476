#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "randfeat/rng.hpp"

namespace randfeat {

enum class DistributionKind { StudentT, StudentTPair, Gaussian, CustomDensity };

/// A full-support initialization (or sampling-weight) distribution with exact
/// pdf. StudentT is the heavy-tailed t_m of the readout constructions;
/// StudentTPair is t_m (x) t_1 on R^{m+1} for network (weights, bias) pairs.
/// CustomDensity provides a pdf only and cannot be sampled.
class InitDistribution {
public:
    static InitDistribution student_t(int m);
    static InitDistribution student_t_pair(int m);
    static InitDistribution gaussian(int m, double sigma = 1.0);
    static InitDistribution custom_density(int dim,
                                           std::function<double(const Eigen::VectorXd&)> pdf);

    DistributionKind kind() const { return kind_; }
    int dim() const { return dim_; }
    double sigma() const { return sigma_; }
    bool has_sampler() const { return kind_ != DistributionKind::CustomDensity; }
    std::string name() const;

    /// Exact density value; strictly positive on the whole space.
    double pdf(const Eigen::VectorXd& x) const;

    Eigen::VectorXd sample(SeededStream& stream) const;
    /// n i.i.d. draws as columns of a dim x n matrix.
    Eigen::MatrixXd sample(SeededStream& stream, int n) const;

private:
    InitDistribution(DistributionKind kind, int dim, double sigma)
        : kind_(kind), dim_(dim), sigma_(sigma) {}

    DistributionKind kind_;
    int dim_;
    double sigma_ = 1.0;
    std::function<double(const Eigen::VectorXd&)> custom_pdf_;
};

/// i.i.d. t_m draws (columns), realized as Z/|G| with Z ~ N(0, I_m) and an
/// independent scalar standard normal G.
Eigen::MatrixXd sample_student_t(int m, SeededStream& stream, int n);

/// i.i.d. standard normal vectors (columns); the V_j ~ w draws for the
/// Gaussian weight.
Eigen::MatrixXd sample_gaussian_weight(int m, SeededStream& stream, int n);

/// log of the t_m normalization Gamma((m+1)/2) / pi^{(m+1)/2}
double student_t_log_norm(int m);

}  // namespace randfeat
