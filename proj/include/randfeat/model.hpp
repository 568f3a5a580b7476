#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "randfeat/distributions.hpp"
#include "randfeat/features.hpp"
#include "randfeat/lsq.hpp"
#include "randfeat/multi_index.hpp"
#include "randfeat/op_count.hpp"
#include "randfeat/rng.hpp"

namespace randfeat {

/// A target function supplying partial_alpha f at arbitrary points for every
/// alpha the trainer asks about; throws InvalidTarget for unsupported orders.
struct Target {
    int input_dim = 1;
    int output_dim = 1;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&, const MultiIndex&)> derivs;

    Eigen::VectorXd operator()(const Eigen::VectorXd& u, const MultiIndex& alpha) const {
        return derivs(u, alpha);
    }

    static Target zero(int m, int d = 1);
    /// u -> exp(-||u||^2 / 2) with all derivatives (Hermite closed forms)
    static Target gaussian_bump(int m);
    /// Wrap a plain function; derivatives beyond order 0 are unavailable.
    static Target scalar(int m, std::function<double(const Eigen::VectorXd&)> f);
    static Target sum(const Target& f1, const Target& f2);
};

enum class CRule { Uniform, OrderScaled };

/// The weighted-Sobolev fit: derivative order k, per-alpha weights c_alpha,
/// normalized sampling weight w, and optional truncation level L applied at
/// evaluation/reporting time only.
struct SobolevFitSpec {
    int k = 0;
    CRule c_rule = CRule::Uniform;
    std::optional<std::vector<double>> c_custom;  // aligned with enumerate_multi_indices
    InitDistribution weight = InitDistribution::gaussian(1);
    std::optional<double> truncation;

    static SobolevFitSpec l2(int m) {
        SobolevFitSpec s;
        s.weight = InitDistribution::gaussian(m);
        return s;
    }

    Eigen::VectorXd c_for(const std::vector<MultiIndex>& alphas, int m) const;
    /// kappa(c) = max c_alpha / min c_alpha
    double kappa(int m) const;
};

/// A trained random feature model: frozen parameter draws plus the linear
/// readout. Immutable after training; evaluation is pure.
struct RandomFeatureModel {
    FeatureFamily family;
    int m = 1;
    int k = 0;
    int N = 0;
    int d = 1;
    Eigen::MatrixXd params;     // param_dim x N, frozen at construction
    Eigen::MatrixXd readout;    // e x N (trig), d x N (neuron)
    Eigen::VectorXcd readout_c; // N (fourier)

    std::uint64_t seed = 0;
    int J = 0;
    CRule c_rule = CRule::Uniform;
    std::optional<double> truncation;
    OperationCount ledger;
    double wall_seconds = 0.0;

    Eigen::VectorXd evaluate(const Eigen::VectorXd& u, const MultiIndex& alpha) const;
    Eigen::VectorXd evaluate(const Eigen::VectorXd& u) const {
        return evaluate(u, MultiIndex::zero(m));
    }
    std::complex<double> evaluate_complex(const Eigen::VectorXd& u,
                                          const MultiIndex& alpha) const;
};

struct TrainOptions {
    /// Columns to force into the front of the parameter sample (exact-
    /// representability experiments); remaining columns stay random.
    std::optional<Eigen::MatrixXd> forced_params;
    /// Externally drawn training data (columns); replaces the spec.weight
    /// draw, e.g. for shared train/test splits. The rng ledger still counts
    /// one unit per point.
    std::optional<Eigen::MatrixXd> fixed_data;
};

/// Least-squares training of a random feature model: draw params from `init`,
/// data from `spec.weight`, assemble the weighted derivative design matrix,
/// and solve the normal equations.
RandomFeatureModel train_random_feature_model(const FeatureFamily& family, int N,
                                              const InitDistribution& init,
                                              const Target& target, int J,
                                              const SobolevFitSpec& spec,
                                              std::uint64_t seed,
                                              const TrainOptions& options = {});

/// Single-hidden-layer specialization: one shared J|alphas| x N matrix, one
/// factorization, one readout row per output.
RandomFeatureModel train_random_nn(int N, const InitDistribution& init,
                                   const Target& target, int J,
                                   const SobolevFitSpec& spec, const Activation& rho,
                                   std::uint64_t seed, const TrainOptions& options = {});

/// The Fourier-readout representation behind the N^{-1/2} approximation
/// rate: frozen draws theta_n ~ init and the closed-form readout
///   y1(theta) = Re f_hat(theta) / ((2 pi)^m p(theta) N),
///   y2(theta) = -Im f_hat(theta) / ((2 pi)^m p(theta) N),
/// so the model is the N-sample Monte Carlo average of the representation
/// f = E[y1(theta) cos(theta^T .) + y2(theta) sin(theta^T .)].
RandomFeatureModel barron_trig_model(
    int m, int N, const InitDistribution& init,
    const std::function<std::complex<double>(const Eigen::VectorXd&)>& f_hat,
    std::uint64_t seed);

/// Complex-readout variant for the Fourier family.
RandomFeatureModel train_random_fourier(
    int N, const InitDistribution& init,
    const std::function<std::complex<double>(const Eigen::VectorXd&, const MultiIndex&)>&
        target,
    int J, const SobolevFitSpec& spec, std::uint64_t seed,
    const TrainOptions& options = {});

/// Componentwise clamp to [-L, L]
template <typename Derived>
auto truncate(const Eigen::MatrixBase<Derived>& z, double L) {
    return z.array().min(L).max(-L).matrix().eval();
}
inline double truncate(double z, double L) { return std::min(std::max(z, -L), L); }

/// Monte Carlo estimate of the weighted Sobolev error
/// (1/M sum_j sum_alpha ||partial_alpha f(W_j) - T_L(partial_alpha G(W_j))||^2)^{1/2}
/// with W_j ~ spec.weight; truncation only when spec.truncation is set.
double weighted_sobolev_error(const RandomFeatureModel& model, const Target& target,
                              const SobolevFitSpec& spec, int M, SeededStream& stream);

/// (1/n sum_j ||f(V_j) - G(V_j)||^2)^{1/2} on the given sample columns.
double empirical_l2_error(const RandomFeatureModel& model, const Target& target,
                          const Eigen::MatrixXd& samples);

/// The training objective: 1/J sum_j sum_alpha c_alpha^2 ||...||^2 (no root).
double empirical_weighted_mse(const RandomFeatureModel& model, const Target& target,
                              const SobolevFitSpec& spec, const Eigen::MatrixXd& samples);

}  // namespace randfeat
