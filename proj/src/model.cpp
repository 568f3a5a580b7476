#include "randfeat/model.hpp"

#include <cassert>
#include <chrono>
#include <cmath>

#include "randfeat/errors.hpp"

namespace randfeat {

namespace {

double hermite_he(int n, double x) {
    // probabilists' Hermite polynomials He_n
    double h0 = 1.0;
    if (n == 0) return h0;
    double h1 = x;
    for (int j = 2; j <= n; ++j) {
        const double h2 = x * h1 - (j - 1) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

Target Target::zero(int m, int d) {
    Target t;
    t.input_dim = m;
    t.output_dim = d;
    t.derivs = [d](const Eigen::VectorXd&, const MultiIndex&) {
        return Eigen::VectorXd::Zero(d).eval();
    };
    return t;
}

Target Target::gaussian_bump(int m) {
    // partial_alpha prod_l exp(-u_l^2/2) = prod_l (-1)^{alpha_l} He_{alpha_l}(u_l) e^{-u_l^2/2}
    Target t;
    t.input_dim = m;
    t.output_dim = 1;
    t.derivs = [](const Eigen::VectorXd& u, const MultiIndex& alpha) {
        double v = std::exp(-0.5 * u.squaredNorm());
        for (int l = 0; l < alpha.dim(); ++l) {
            v *= hermite_he(alpha[l], u[l]);
            if (alpha[l] % 2 == 1) v = -v;
        }
        return Eigen::VectorXd::Constant(1, v).eval();
    };
    return t;
}

Target Target::scalar(int m, std::function<double(const Eigen::VectorXd&)> f) {
    Target t;
    t.input_dim = m;
    t.output_dim = 1;
    t.derivs = [f = std::move(f)](const Eigen::VectorXd& u, const MultiIndex& alpha) {
        if (alpha.order() != 0) {
            throw InvalidTarget("target provides no derivatives beyond order 0");
        }
        return Eigen::VectorXd::Constant(1, f(u)).eval();
    };
    return t;
}

Target Target::sum(const Target& f1, const Target& f2) {
    assert(f1.input_dim == f2.input_dim && f1.output_dim == f2.output_dim);
    Target t;
    t.input_dim = f1.input_dim;
    t.output_dim = f1.output_dim;
    t.derivs = [f1, f2](const Eigen::VectorXd& u, const MultiIndex& alpha) {
        return (f1(u, alpha) + f2(u, alpha)).eval();
    };
    return t;
}

Eigen::VectorXd SobolevFitSpec::c_for(const std::vector<MultiIndex>& alphas, int m) const {
    Eigen::VectorXd c(static_cast<Eigen::Index>(alphas.size()));
    if (c_custom) {
        if (c_custom->size() != alphas.size()) {
            throw ConfigError("custom c has wrong length");
        }
        for (size_t a = 0; a < alphas.size(); ++a) c[static_cast<Eigen::Index>(a)] = (*c_custom)[a];
    } else {
        for (size_t a = 0; a < alphas.size(); ++a) {
            const int order = alphas[a].order();
            c[static_cast<Eigen::Index>(a)] =
                c_rule == CRule::Uniform ? 1.0 : std::pow(static_cast<double>(m), -order);
        }
    }
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        if (!(c[i] > 0.0)) throw ConfigError("derivative weights c_alpha must be positive");
    }
    return c;
}

double SobolevFitSpec::kappa(int m) const {
    const auto alphas = enumerate_multi_indices(m, k);
    const Eigen::VectorXd c = c_for(alphas, m);
    return c.maxCoeff() / c.minCoeff();
}

Eigen::VectorXd RandomFeatureModel::evaluate(const Eigen::VectorXd& u,
                                             const MultiIndex& alpha) const {
    assert(u.size() == m);
    switch (family.kind) {
        case FamilyKind::Trig: {
            double acc = 0.0;
            for (int n = 0; n < N; ++n) {
                const Eigen::VectorXd theta = params.col(n);
                acc += readout(0, n) * trig_feature_eval(TrigKind::Cos, theta, u, alpha) +
                       readout(1, n) * trig_feature_eval(TrigKind::Sin, theta, u, alpha);
            }
            return Eigen::VectorXd::Constant(1, acc);
        }
        case FamilyKind::Neuron: {
            Eigen::VectorXd phi(N);
            for (int n = 0; n < N; ++n) {
                phi[n] = neuron_feature_eval(family.activation, params.col(n).head(m),
                                             params(m, n), u, alpha);
            }
            return readout * phi;
        }
        case FamilyKind::Fourier: {
            const std::complex<double> v = evaluate_complex(u, alpha);
            return Eigen::VectorXd::Constant(1, v.real());
        }
    }
    return {};
}

std::complex<double> RandomFeatureModel::evaluate_complex(const Eigen::VectorXd& u,
                                                          const MultiIndex& alpha) const {
    if (family.kind != FamilyKind::Fourier) {
        return {evaluate(u, alpha)[0], 0.0};
    }
    std::complex<double> acc = 0.0;
    for (int n = 0; n < N; ++n) {
        acc += readout_c[n] * fourier_feature_eval(params.col(n), u, alpha);
    }
    return acc;
}

namespace {

Eigen::MatrixXd draw_params(const InitDistribution& init, int N, SeededStream& stream,
                            const TrainOptions& options, OperationCount& ledger) {
    Eigen::MatrixXd params = init.sample(stream, N);
    ledger.rng += N;
    if (options.forced_params) {
        const auto& forced = *options.forced_params;
        assert(forced.rows() == params.rows() && forced.cols() <= N);
        params.leftCols(forced.cols()) = forced;
    }
    return params;
}

Eigen::MatrixXd draw_data(const SobolevFitSpec& spec, int J, SeededStream& stream,
                          const TrainOptions& options, OperationCount& ledger) {
    ledger.rng += J;
    if (options.fixed_data) {
        assert(options.fixed_data->cols() == J);
        return *options.fixed_data;
    }
    return spec.weight.sample(stream, J);
}

Eigen::VectorXd stack_targets(const Target& target, const Eigen::MatrixXd& V,
                              const std::vector<MultiIndex>& alphas,
                              const Eigen::VectorXd& c, int d, OperationCount& ledger) {
    const int J = static_cast<int>(V.cols());
    const int A = static_cast<int>(alphas.size());
    Eigen::VectorXd Z(static_cast<Eigen::Index>(J) * A * d);
    for (int j = 0; j < J; ++j) {
        for (int a = 0; a < A; ++a) {
            const Eigen::VectorXd fa = target(V.col(j), alphas[a]);
            if (fa.size() != d) {
                throw InvalidTarget("target output dimension mismatch");
            }
            Z.segment((static_cast<Eigen::Index>(j) * A + a) * d, d) = c[a] * fa;
        }
    }
    ledger.rhs += 2.0 * static_cast<double>(J) * A * d;
    return Z;
}

}  // namespace

RandomFeatureModel train_random_feature_model(const FeatureFamily& family, int N,
                                              const InitDistribution& init,
                                              const Target& target, int J,
                                              const SobolevFitSpec& spec,
                                              std::uint64_t seed,
                                              const TrainOptions& options) {
    if (family.kind == FamilyKind::Fourier) {
        throw InvalidTarget("use train_random_fourier for the complex family");
    }
    if (target.output_dim != 1) {
        throw InvalidTarget("train_random_feature_model handles scalar targets; "
                            "use train_random_nn for vector outputs");
    }
    assert(init.dim() == family.param_dim());
    const auto start = Clock::now();
    const int m = family.input_dim;
    const auto alphas = enumerate_multi_indices(m, spec.k);
    if (spec.k > family.max_order()) {
        throw DerivativeOrderExceeded("family supports derivatives up to order " +
                                      std::to_string(family.max_order()));
    }

    RandomFeatureModel model;
    model.family = family;
    model.m = m;
    model.k = spec.k;
    model.N = N;
    model.d = 1;
    model.seed = seed;
    model.J = J;
    model.c_rule = spec.c_rule;
    model.truncation = spec.truncation;

    SeededStream init_stream(seed, kStreamInit);
    SeededStream data_stream(seed, kStreamData);
    model.params = draw_params(init, N, init_stream, options, model.ledger);
    if (options.fixed_data) J = static_cast<int>(options.fixed_data->cols());
    model.J = J;
    const Eigen::MatrixXd V = draw_data(spec, J, data_stream, options, model.ledger);

    const Eigen::VectorXd c = spec.c_for(alphas, m);
    DesignMatrix dm = assemble_design_matrix(family, model.params, V, alphas, c);
    model.ledger += dm.ledger;
    const Eigen::VectorXd Z = stack_targets(target, V, alphas, c, 1, model.ledger);

    const Eigen::VectorXd y = solve_normal_equations(dm.G, Z, model.ledger);
    model.readout.resize(family.count(), N);
    for (int l = 0; l < family.count(); ++l) {
        model.readout.row(l) = y.segment(static_cast<Eigen::Index>(l) * N, N).transpose();
    }
    model.wall_seconds = seconds_since(start);
    return model;
}

RandomFeatureModel train_random_nn(int N, const InitDistribution& init,
                                   const Target& target, int J,
                                   const SobolevFitSpec& spec, const Activation& rho,
                                   std::uint64_t seed, const TrainOptions& options) {
    const auto start = Clock::now();
    const int m = target.input_dim;
    const int d = target.output_dim;
    assert(init.dim() == m + 1);
    if (spec.k > rho.max_derivative_order) {
        throw DerivativeOrderExceeded("activation " + to_string(rho.kind) +
                                      " supports k <= " +
                                      std::to_string(rho.max_derivative_order));
    }
    const auto alphas = enumerate_multi_indices(m, spec.k);

    RandomFeatureModel model;
    model.family = FeatureFamily::neuron(m, rho);
    model.m = m;
    model.k = spec.k;
    model.N = N;
    model.d = d;
    model.seed = seed;
    model.J = J;
    model.c_rule = spec.c_rule;
    model.truncation = spec.truncation;

    SeededStream init_stream(seed, kStreamInit);
    SeededStream data_stream(seed, kStreamData);
    model.params = draw_params(init, N, init_stream, options, model.ledger);
    if (options.fixed_data) J = static_cast<int>(options.fixed_data->cols());
    model.J = J;
    const Eigen::MatrixXd V = draw_data(spec, J, data_stream, options, model.ledger);

    const Eigen::VectorXd c = spec.c_for(alphas, m);
    DesignMatrix dm = assemble_design_matrix_nn(rho, model.params, V, alphas, c);
    model.ledger += dm.ledger;

    const int A = static_cast<int>(alphas.size());
    Eigen::MatrixXd Z(static_cast<Eigen::Index>(J) * A, d);
    for (int j = 0; j < J; ++j) {
        for (int a = 0; a < A; ++a) {
            const Eigen::VectorXd fa = target(V.col(j), alphas[a]);
            if (fa.size() != d) throw InvalidTarget("target output dimension mismatch");
            Z.row(static_cast<Eigen::Index>(j) * A + a) = (c[a] * fa).transpose();
        }
    }
    model.ledger.rhs += 2.0 * static_cast<double>(J) * A * d;

    model.readout = solve_normal_equations_multi(dm.G, Z, model.ledger).transpose();
    model.wall_seconds = seconds_since(start);
    return model;
}

RandomFeatureModel barron_trig_model(
    int m, int N, const InitDistribution& init,
    const std::function<std::complex<double>(const Eigen::VectorXd&)>& f_hat,
    std::uint64_t seed) {
    assert(init.dim() == m);
    RandomFeatureModel model;
    model.family = FeatureFamily::trig(m);
    model.m = m;
    model.k = 0;
    model.N = N;
    model.d = 1;
    model.seed = seed;
    SeededStream init_stream(seed, kStreamInit);
    model.params = init.sample(init_stream, N);
    model.ledger.rng += N;
    model.readout.resize(2, N);
    const double norm = std::pow(2.0 * M_PI, m) * N;
    for (int n = 0; n < N; ++n) {
        const std::complex<double> coeff =
            f_hat(model.params.col(n)) / (init.pdf(model.params.col(n)) * norm);
        model.readout(0, n) = coeff.real();
        model.readout(1, n) = -coeff.imag();
    }
    model.ledger.remainder += 4.0 * N;
    return model;
}

RandomFeatureModel train_random_fourier(
    int N, const InitDistribution& init,
    const std::function<std::complex<double>(const Eigen::VectorXd&, const MultiIndex&)>&
        target,
    int J, const SobolevFitSpec& spec, std::uint64_t seed, const TrainOptions& options) {
    const auto start = Clock::now();
    const int m = init.dim();
    const auto alphas = enumerate_multi_indices(m, spec.k);
    const int A = static_cast<int>(alphas.size());

    RandomFeatureModel model;
    model.family = FeatureFamily::fourier(m);
    model.m = m;
    model.k = spec.k;
    model.N = N;
    model.d = 1;
    model.seed = seed;
    model.J = J;
    model.c_rule = spec.c_rule;
    model.truncation = spec.truncation;

    SeededStream init_stream(seed, kStreamInit);
    SeededStream data_stream(seed, kStreamData);
    model.params = draw_params(init, N, init_stream, options, model.ledger);
    if (options.fixed_data) J = static_cast<int>(options.fixed_data->cols());
    model.J = J;
    const Eigen::MatrixXd V = draw_data(spec, J, data_stream, options, model.ledger);

    const Eigen::VectorXd c = spec.c_for(alphas, m);
    Eigen::MatrixXcd G(static_cast<Eigen::Index>(J) * A, N);
    Eigen::VectorXcd Z(static_cast<Eigen::Index>(J) * A);
    for (int j = 0; j < J; ++j) {
        for (int a = 0; a < A; ++a) {
            const Eigen::Index row = static_cast<Eigen::Index>(j) * A + a;
            for (int n = 0; n < N; ++n) {
                G(row, n) = c[a] * fourier_feature_eval(model.params.col(n), V.col(j), alphas[a]);
            }
            Z[row] = c[a] * target(V.col(j), alphas[a]);
        }
    }
    model.ledger.assembly += 2.0 * static_cast<double>(J) * A * N;
    model.ledger.rhs += 2.0 * static_cast<double>(J) * A;

    model.readout_c = solve_normal_equations(G, Z, model.ledger);
    model.wall_seconds = seconds_since(start);
    return model;
}

double weighted_sobolev_error(const RandomFeatureModel& model, const Target& target,
                              const SobolevFitSpec& spec, int M, SeededStream& stream) {
    const auto alphas = enumerate_multi_indices(model.m, spec.k);
    double acc = 0.0;
    for (int j = 0; j < M; ++j) {
        const Eigen::VectorXd w = spec.weight.sample(stream);
        for (const auto& alpha : alphas) {
            Eigen::VectorXd pred = model.evaluate(w, alpha);
            if (spec.truncation) pred = truncate(pred, *spec.truncation);
            acc += (target(w, alpha) - pred).squaredNorm();
        }
    }
    return std::sqrt(acc / M);
}

double empirical_l2_error(const RandomFeatureModel& model, const Target& target,
                          const Eigen::MatrixXd& samples) {
    assert(samples.cols() > 0);
    const MultiIndex zero = MultiIndex::zero(model.m);
    double acc = 0.0;
    for (Eigen::Index j = 0; j < samples.cols(); ++j) {
        if (model.family.kind == FamilyKind::Fourier) {
            const auto gap = model.evaluate_complex(samples.col(j), zero) -
                             std::complex<double>(target(samples.col(j), zero)[0], 0.0);
            acc += std::norm(gap);
        } else {
            acc += (target(samples.col(j), zero) - model.evaluate(samples.col(j), zero))
                       .squaredNorm();
        }
    }
    return std::sqrt(acc / static_cast<double>(samples.cols()));
}

double empirical_weighted_mse(const RandomFeatureModel& model, const Target& target,
                              const SobolevFitSpec& spec, const Eigen::MatrixXd& samples) {
    const auto alphas = enumerate_multi_indices(model.m, spec.k);
    const Eigen::VectorXd c = spec.c_for(alphas, model.m);
    double acc = 0.0;
    for (Eigen::Index j = 0; j < samples.cols(); ++j) {
        for (size_t a = 0; a < alphas.size(); ++a) {
            const double ca = c[static_cast<Eigen::Index>(a)];
            acc += ca * ca *
                   (target(samples.col(j), alphas[a]) - model.evaluate(samples.col(j), alphas[a]))
                       .squaredNorm();
        }
    }
    return acc / static_cast<double>(samples.cols());
}

}  // namespace randfeat
