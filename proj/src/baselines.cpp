#include "randfeat/baselines.hpp"

#include <cassert>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>

#include "randfeat/distributions.hpp"
#include "randfeat/errors.hpp"

namespace randfeat {

std::string to_string(BaselineVariant v) {
    return v == BaselineVariant::Trig ? "det_trig" : "det_tanh";
}

int DeterministicModel::parameter_count() const {
    return static_cast<int>(inner.size() + readout.size());
}

double DeterministicModel::evaluate(const Eigen::VectorXd& u) const {
    if (variant == BaselineVariant::Trig) {
        double acc = 0.0;
        for (int n = 0; n < N; ++n) {
            const double t = inner.col(n).dot(u);
            acc += readout(0, n) * std::cos(t) + readout(1, n) * std::sin(t);
        }
        return acc;
    }
    double acc = 0.0;
    for (int n = 0; n < N; ++n) {
        acc += readout(0, n) * std::tanh(inner.col(n).head(m).dot(u) - inner(m, n));
    }
    return acc;
}

Eigen::RowVectorXd DeterministicModel::evaluate_batch(const Eigen::MatrixXd& X) const {
    if (variant == BaselineVariant::Trig) {
        const Eigen::MatrixXd T = inner.transpose() * X;  // N x B
        return readout.row(0) * T.array().cos().matrix() +
               readout.row(1) * T.array().sin().matrix();
    }
    Eigen::MatrixXd Z = inner.topRows(m).transpose() * X;  // N x B
    Z.colwise() -= inner.row(m).transpose();
    return readout.row(0) * Z.array().tanh().matrix();
}

DeterministicModel make_deterministic(BaselineVariant variant, int m, int N,
                                      std::uint64_t seed) {
    DeterministicModel model;
    model.variant = variant;
    model.m = m;
    model.N = N;
    SeededStream stream(seed, kStreamInit);
    if (variant == BaselineVariant::Trig) {
        model.inner = sample_student_t(m, stream, N);
        model.readout = Eigen::MatrixXd::Zero(2, N);
        assert(model.parameter_count() == N * m + 2 * N);
    } else {
        model.inner = InitDistribution::student_t_pair(m).sample(stream, N);
        model.readout = Eigen::MatrixXd::Zero(1, N);
        assert(model.parameter_count() == N * (m + 1) + N);
    }
    model.m_inner = Eigen::MatrixXd::Zero(model.inner.rows(), model.inner.cols());
    model.v_inner = model.m_inner;
    model.m_readout = Eigen::MatrixXd::Zero(model.readout.rows(), model.readout.cols());
    model.v_readout = model.m_readout;
    return model;
}

namespace {

void adam_update(Eigen::MatrixXd& param, Eigen::MatrixXd& m1, Eigen::MatrixXd& m2,
                 const Eigen::MatrixXd& grad, long t, const AdamConfig& c) {
    m1 = c.beta1 * m1 + (1.0 - c.beta1) * grad;
    m2 = c.beta2 * m2 + (1.0 - c.beta2) * grad.cwiseProduct(grad);
    const double corr1 = 1.0 - std::pow(c.beta1, static_cast<double>(t));
    const double corr2 = 1.0 - std::pow(c.beta2, static_cast<double>(t));
    param.array() -=
        c.lr * (m1.array() / corr1) / ((m2.array() / corr2).sqrt() + c.epsilon);
}

}  // namespace

void adam_step(DeterministicModel& model, const Eigen::MatrixXd& X,
               const Eigen::RowVectorXd& y, const AdamConfig& config) {
    assert(X.cols() == y.cols() && X.cols() > 0);
    const double B = static_cast<double>(X.cols());
    Eigen::MatrixXd grad_inner(model.inner.rows(), model.inner.cols());
    Eigen::MatrixXd grad_readout(model.readout.rows(), model.readout.cols());

    if (model.variant == BaselineVariant::Trig) {
        const Eigen::MatrixXd T = model.inner.transpose() * X;  // N x B
        const Eigen::MatrixXd C = T.array().cos().matrix();
        const Eigen::MatrixXd S = T.array().sin().matrix();
        const Eigen::RowVectorXd r =
            model.readout.row(0) * C + model.readout.row(1) * S - y;
        grad_readout.row(0) = (2.0 / B) * r * C.transpose();
        grad_readout.row(1) = (2.0 / B) * r * S.transpose();
        // d pred_b / d theta_n = (-y1_n sin + y2_n cos)(theta_n^T x_b) x_b
        Eigen::MatrixXd W =
            (-model.readout.row(0).transpose().replicate(1, X.cols())).cwiseProduct(S) +
            model.readout.row(1).transpose().replicate(1, X.cols()).cwiseProduct(C);
        W.array().rowwise() *= r.array();
        grad_inner = (2.0 / B) * X * W.transpose();
    } else {
        Eigen::MatrixXd Z = model.inner.topRows(model.m).transpose() * X;  // N x B
        Z.colwise() -= model.inner.row(model.m).transpose();
        const Eigen::MatrixXd Phi = Z.array().tanh().matrix();
        const Eigen::RowVectorXd r = model.readout.row(0) * Phi - y;
        grad_readout.row(0) = (2.0 / B) * r * Phi.transpose();
        Eigen::MatrixXd D = (1.0 - Phi.array().square()).matrix();  // tanh'
        D.array().colwise() *= model.readout.row(0).transpose().array();
        D.array().rowwise() *= r.array();
        grad_inner.topRows(model.m) = (2.0 / B) * X * D.transpose();
        grad_inner.row(model.m) = -(2.0 / B) * D.rowwise().sum().transpose();
    }

    ++model.step;
    adam_update(model.inner, model.m_inner, model.v_inner, grad_inner, model.step, config);
    adam_update(model.readout, model.m_readout, model.v_readout, grad_readout,
                model.step, config);
}

double rms_error(const DeterministicModel& model, const Eigen::MatrixXd& X,
                 const Eigen::RowVectorXd& y) {
    const Eigen::RowVectorXd r = model.evaluate_batch(X) - y;
    return std::sqrt(r.squaredNorm() / static_cast<double>(X.cols()));
}

DeterministicTrainResult train_deterministic(BaselineVariant variant, int N,
                                             const Eigen::MatrixXd& train_x,
                                             const Eigen::RowVectorXd& train_y,
                                             const Eigen::MatrixXd& test_x,
                                             const Eigen::RowVectorXd& test_y,
                                             int epochs, const AdamConfig& config,
                                             int batch, std::uint64_t seed) {
    assert(batch >= 1 && epochs >= 0);
    const auto start = std::chrono::steady_clock::now();
    DeterministicTrainResult result;
    result.model = make_deterministic(variant, static_cast<int>(train_x.rows()), N, seed);
    const int J = static_cast<int>(train_x.cols());
    std::vector<int> order(static_cast<size_t>(J));
    std::iota(order.begin(), order.end(), 0);
    SeededStream shuffle_stream(seed, kStreamData);

    Eigen::MatrixXd bx(train_x.rows(), batch);
    Eigen::RowVectorXd by(batch);
    for (int epoch = 0; epoch < epochs; ++epoch) {
        // Fisher-Yates with the model's own stream
        for (int i = J - 1; i > 0; --i) {
            const int j = static_cast<int>(shuffle_stream.next_u64() % (i + 1));
            std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(j)]);
        }
        for (int begin = 0; begin + batch <= J; begin += batch) {
            for (int i = 0; i < batch; ++i) {
                bx.col(i) = train_x.col(order[static_cast<size_t>(begin + i)]);
                by[i] = train_y[order[static_cast<size_t>(begin + i)]];
            }
            adam_step(result.model, bx, by, config);
        }
        EpochRecord record;
        record.epoch = epoch + 1;
        record.train_error = rms_error(result.model, train_x, train_y);
        record.test_error = rms_error(result.model, test_x, test_y);
        record.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        result.trace.push_back(record);
    }
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

void write_trace_csv(const std::string& path, const std::vector<EpochRecord>& trace) {
    std::ofstream out(path);
    if (!out) throw SerializationError("cannot open " + path);
    out << "epoch,train_error,test_error,seconds\n";
    for (const auto& r : trace) {
        out << r.epoch << "," << r.train_error << "," << r.test_error << "," << r.seconds
            << "\n";
    }
}

}  // namespace randfeat
