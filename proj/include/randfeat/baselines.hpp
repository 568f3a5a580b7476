#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "randfeat/rng.hpp"

namespace randfeat {

enum class BaselineVariant { Trig, TanhNN };

std::string to_string(BaselineVariant v);

struct AdamConfig {
    double lr = 1e-5;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// Fully trained counterpart of the random models: both the inner parameters
/// and the readout follow Adam on the minibatch mean squared error, with
/// hand-written chain-rule gradients. Scalar output.
struct DeterministicModel {
    BaselineVariant variant = BaselineVariant::Trig;
    int m = 1;
    int N = 1;
    Eigen::MatrixXd inner;    // trig: m x N frequencies; tanh: (m+1) x N (a; b)
    Eigen::MatrixXd readout;  // trig: 2 x N (cos, sin); tanh: 1 x N

    // optimizer state mirrors the parameter arrays
    Eigen::MatrixXd m_inner, v_inner, m_readout, v_readout;
    long step = 0;

    int parameter_count() const;
    double evaluate(const Eigen::VectorXd& u) const;
    /// predictions on sample columns
    Eigen::RowVectorXd evaluate_batch(const Eigen::MatrixXd& X) const;
};

/// Inner parameters drawn from the same heavy-tailed distributions as the
/// random models (t_m, resp. t_m (x) t_1), readout zero.
DeterministicModel make_deterministic(BaselineVariant variant, int m, int N,
                                      std::uint64_t seed);

/// One Adam update of the minibatch MSE (1/B) sum_b (G(x_b) - y_b)^2.
void adam_step(DeterministicModel& model, const Eigen::MatrixXd& X,
               const Eigen::RowVectorXd& y, const AdamConfig& config);

double rms_error(const DeterministicModel& model, const Eigen::MatrixXd& X,
                 const Eigen::RowVectorXd& y);

struct EpochRecord {
    int epoch;
    double train_error;
    double test_error;
    double seconds;
};

struct DeterministicTrainResult {
    DeterministicModel model;
    std::vector<EpochRecord> trace;
    double wall_seconds = 0.0;
};

/// Shuffled minibatch epochs; per-epoch train/test errors and elapsed time
/// are recorded. Zero epochs returns the initial model unchanged.
DeterministicTrainResult train_deterministic(BaselineVariant variant, int N,
                                             const Eigen::MatrixXd& train_x,
                                             const Eigen::RowVectorXd& train_y,
                                             const Eigen::MatrixXd& test_x,
                                             const Eigen::RowVectorXd& test_y,
                                             int epochs, const AdamConfig& config,
                                             int batch, std::uint64_t seed);

void write_trace_csv(const std::string& path, const std::vector<EpochRecord>& trace);

}  // namespace randfeat
