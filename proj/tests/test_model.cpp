#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>

#include "randfeat/errors.hpp"
#include "randfeat/model.hpp"
#include "randfeat/experiments.hpp"
#include "randfeat/serialize.hpp"
#include "test_util.hpp"

using namespace randfeat;
using randfeat::testing::fd_derivative;
using randfeat::testing::rel_err;

namespace {

Target wrap_model(const RandomFeatureModel& model) {
    Target t;
    t.input_dim = model.m;
    t.output_dim = model.d;
    t.derivs = [&model](const Eigen::VectorXd& u, const MultiIndex& alpha) {
        return model.evaluate(u, alpha);
    };
    return t;
}

}  // namespace

TEST_CASE("zero target trains to zero readout") {
    const auto model = train_random_feature_model(
        FeatureFamily::trig(1), 8, InitDistribution::student_t(1), Target::zero(1), 50,
        SobolevFitSpec::l2(1), 3);
    CHECK(model.readout.cwiseAbs().maxCoeff() < 1e-12);
    SeededStream test(9, kStreamTest);
    const Eigen::MatrixXd X = sample_gaussian_weight(1, test, 100);
    CHECK(empirical_l2_error(model, Target::zero(1), X) < 1e-12);
}

TEST_CASE("exact representability: forced trig feature, J >= N, k = 0") {
    const int m = 1, N = 6, J = 40;
    const double theta_star = 1.3;
    Target target;
    target.input_dim = m;
    target.output_dim = 1;
    target.derivs = [theta_star, m](const Eigen::VectorXd& u, const MultiIndex& alpha) {
        return Eigen::VectorXd::Constant(
                   1, trig_feature_eval(TrigKind::Cos,
                                        Eigen::VectorXd::Constant(1, theta_star), u, alpha))
            .eval();
    };
    TrainOptions options;
    options.forced_params = Eigen::MatrixXd::Constant(1, 1, theta_star);
    const SobolevFitSpec spec = SobolevFitSpec::l2(m);
    const auto model = train_random_feature_model(FeatureFamily::trig(m), N,
                                                  InitDistribution::student_t(m), target,
                                                  J, spec, 11, options);
    SeededStream data(11, kStreamData);
    const Eigen::MatrixXd V = sample_gaussian_weight(m, data, J);
    CHECK(empirical_weighted_mse(model, target, spec, V) <= 1e-16);
}

TEST_CASE("exact representability with derivatives: tanh neuron, k = 1") {
    const int m = 1, N = 5, J = 60;
    Eigen::MatrixXd forced(2, 1);
    forced << 2.0, 0.0;  // (a, b) = (2, 0)
    Target target;
    target.input_dim = m;
    target.output_dim = 1;
    target.derivs = [](const Eigen::VectorXd& u, const MultiIndex& alpha) {
        const Activation rho = Activation::tanh();
        return Eigen::VectorXd::Constant(
                   1, neuron_feature_eval(rho, Eigen::VectorXd::Constant(1, 2.0), 0.0, u,
                                          alpha))
            .eval();
    };
    SobolevFitSpec spec = SobolevFitSpec::l2(m);
    spec.k = 1;
    TrainOptions options;
    options.forced_params = forced;
    const auto model = train_random_nn(N, InitDistribution::student_t_pair(m), target, J,
                                       spec, Activation::tanh(), 13, options);
    SeededStream data(13, kStreamData);
    const Eigen::MatrixXd V = sample_gaussian_weight(m, data, J);
    CHECK(empirical_weighted_mse(model, target, spec, V) <= 1e-16);
}

TEST_CASE("equal target components give equal readout rows") {
    Target target;
    target.input_dim = 2;
    target.output_dim = 2;
    target.derivs = [](const Eigen::VectorXd& u, const MultiIndex& alpha) {
        const double v =
            alpha.order() == 0 ? std::exp(-0.5 * u.squaredNorm()) : 0.0;
        return Eigen::VectorXd::Constant(2, v).eval();
    };
    // k = 0, so the zero derivative shortcut above is exact
    const auto model = train_random_nn(12, InitDistribution::student_t_pair(2), target,
                                       200, SobolevFitSpec::l2(2), Activation::tanh(), 5);
    CHECK((model.readout.row(0) - model.readout.row(1)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("trained-model derivatives match finite differences") {
    const auto model = train_random_feature_model(
        FeatureFamily::trig(2), 10, InitDistribution::gaussian(2), Target::gaussian_bump(2),
        300, SobolevFitSpec::l2(2), 17);
    SeededStream stream(18, 1);
    const auto alphas = enumerate_multi_indices(2, 2);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::VectorXd u = stream.normal_vector(2);
        for (const auto& alpha : alphas) {
            if (alpha.order() == 0) continue;
            const double fd = fd_derivative(
                [&](const Eigen::VectorXd& x) { return model.evaluate(x)[0]; }, u, alpha);
            CHECK(rel_err(model.evaluate(u, alpha)[0], fd) < 1e-5);
        }
    }
}

TEST_CASE("truncation clamp") {
    Eigen::VectorXd z(3);
    z << 2.0, -3.0, 0.5;
    const Eigen::VectorXd t = truncate(z, 1.0);
    CHECK(t[0] == 1.0);
    CHECK(t[1] == -1.0);
    CHECK(t[2] == 0.5);
    CHECK((truncate(z, 10.0) - z).norm() == 0.0);
    CHECK((truncate(truncate(z, 1.0), 1.0) - truncate(z, 1.0)).norm() == 0.0);  // idempotent
}

TEST_CASE("weighted sobolev error definitional cases") {
    // constant model equal to the target everywhere
    RandomFeatureModel constant;
    constant.family = FeatureFamily::trig(1);
    constant.m = 1;
    constant.N = 1;
    constant.params = Eigen::MatrixXd::Zero(1, 1);
    constant.readout = Eigen::MatrixXd::Zero(2, 1);
    constant.readout(0, 0) = 0.7;  // model == 0.7 cos(0 u) == 0.7

    SobolevFitSpec spec = SobolevFitSpec::l2(1);
    Target same = Target::scalar(1, [](const Eigen::VectorXd&) { return 0.7; });
    SeededStream s1(5, kStreamTest);
    CHECK(weighted_sobolev_error(constant, same, spec, 50, s1) == doctest::Approx(0.0));

    Target gap = Target::scalar(1, [](const Eigen::VectorXd&) { return 2.7; });
    SeededStream s2(5, kStreamTest);
    CHECK(weighted_sobolev_error(constant, gap, spec, 1, s2) == doctest::Approx(2.0));

    // matches the empirical L2 error when k = 0 and no truncation
    SeededStream s3(6, kStreamTest);
    const Eigen::MatrixXd X = sample_gaussian_weight(1, s3, 37);
    const double l2 = empirical_l2_error(constant, gap, X);
    CHECK(l2 == doctest::Approx(2.0).epsilon(1e-12));

    // truncation applies only when the spec sets it
    spec.truncation = 0.5;
    SeededStream s4(7, kStreamTest);
    const double truncated = weighted_sobolev_error(constant, gap, spec, 1, s4);
    CHECK(truncated == doctest::Approx(2.2));  // model clamped to 0.5, gap 2.7 - 0.5
}

TEST_CASE("weighted sobolev error: independent estimates agree within MC noise") {
    SobolevFitSpec spec = SobolevFitSpec::l2(1);
    spec.k = 1;
    const Target target = Target::gaussian_bump(1);
    const auto model = train_random_feature_model(FeatureFamily::trig(1), 8,
                                                  InitDistribution::student_t(1), target,
                                                  300, spec, 59);
    const int M = 100000;
    SeededStream s1(61, kStreamTest);
    SeededStream s2(62, kStreamTest);
    const double e1 = weighted_sobolev_error(model, target, spec, M, s1);
    const double e2 = weighted_sobolev_error(model, target, spec, M, s2);

    // variance oracle: per-sample squared-gap statistics from a third stream
    SeededStream s3(63, kStreamTest);
    const auto alphas = enumerate_multi_indices(1, spec.k);
    double mean = 0.0, mean_sq = 0.0;
    for (int j = 0; j < M; ++j) {
        const Eigen::VectorXd w = spec.weight.sample(s3);
        double s = 0.0;
        for (const auto& alpha : alphas) {
            s += (target(w, alpha) - model.evaluate(w, alpha)).squaredNorm();
        }
        mean += s;
        mean_sq += s * s;
    }
    mean /= M;
    mean_sq /= M;
    const double se_mean = std::sqrt((mean_sq - mean * mean) / M);
    const double se_root = se_mean / (2.0 * std::sqrt(mean));  // delta method
    CHECK(std::abs(e1 - e2) < 3.0 * std::sqrt(2.0) * se_root);
}

TEST_CASE("empirical l2 error basics") {
    RandomFeatureModel constant;
    constant.family = FeatureFamily::trig(1);
    constant.m = 1;
    constant.N = 1;
    constant.params = Eigen::MatrixXd::Zero(1, 1);
    constant.readout = Eigen::MatrixXd::Zero(2, 1);
    const Target three = Target::scalar(1, [](const Eigen::VectorXd&) { return 3.0; });
    const Eigen::MatrixXd one_point = Eigen::MatrixXd::Zero(1, 1);
    CHECK(empirical_l2_error(constant, three, one_point) == doctest::Approx(3.0));
}

TEST_CASE("training determinism and linearity in the target") {
    const SobolevFitSpec spec = SobolevFitSpec::l2(1);
    const Target f1 = Target::gaussian_bump(1);
    const Target f2 = Target::scalar(1, [](const Eigen::VectorXd& u) {
        return std::cos(2.0 * u[0]);
    });
    // well-separated frequencies keep the normal matrix conditioned, so the
    // algebraic linearity of the solve is visible at full precision
    TrainOptions options;
    Eigen::MatrixXd forced(1, 4);
    forced << -2.0, -0.7, 0.9, 2.3;
    options.forced_params = forced;
    const auto m1 = train_random_feature_model(FeatureFamily::trig(1), 4,
                                               InitDistribution::gaussian(1), f1, 300,
                                               spec, 123, options);
    const auto m1_again = train_random_feature_model(FeatureFamily::trig(1), 4,
                                                     InitDistribution::gaussian(1), f1,
                                                     300, spec, 123, options);
    CHECK(std::memcmp(m1.readout.data(), m1_again.readout.data(),
                      sizeof(double) * m1.readout.size()) == 0);
    CHECK(std::memcmp(m1.params.data(), m1_again.params.data(),
                      sizeof(double) * m1.params.size()) == 0);

    const auto m2 = train_random_feature_model(FeatureFamily::trig(1), 4,
                                               InitDistribution::gaussian(1), f2, 300,
                                               spec, 123, options);
    const auto msum = train_random_feature_model(FeatureFamily::trig(1), 4,
                                                 InitDistribution::gaussian(1),
                                                 Target::sum(f1, f2), 300, spec, 123,
                                                 options);
    CHECK((msum.readout - (m1.readout + m2.readout)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("training optimality: readout perturbations never help") {
    const SobolevFitSpec spec = SobolevFitSpec::l2(1);
    const Target target = Target::gaussian_bump(1);
    auto model = train_random_feature_model(FeatureFamily::trig(1), 12,
                                            InitDistribution::student_t(1), target, 200,
                                            spec, 29);
    SeededStream data(29, kStreamData);
    const Eigen::MatrixXd V = sample_gaussian_weight(1, data, 200);
    const double best = empirical_weighted_mse(model, target, spec, V);
    SeededStream perturb(30, 1);
    for (int trial = 0; trial < 20; ++trial) {
        RandomFeatureModel shifted = model;
        for (int l = 0; l < shifted.readout.rows(); ++l) {
            for (int n = 0; n < shifted.readout.cols(); ++n) {
                shifted.readout(l, n) += 1e-3 * perturb.next_normal();
            }
        }
        CHECK(empirical_weighted_mse(shifted, target, spec, V) >= best - 1e-10);
    }
}

TEST_CASE("universal approximation: trained test error non-increasing in N") {
    // an oscillatory smooth 1-D target keeps the approximation term above the
    // normal-equation precision floor over the whole grid
    const Target target = Target::scalar(1, [](const Eigen::VectorXd& u) {
        return std::sin(6.0 * u[0]) * std::exp(-0.5 * u[0] * u[0]);
    });
    const std::vector<int> feature_counts{32, 64, 128, 256, 512};
    std::vector<double> medians(feature_counts.size());
    randfeat::parallel_for(
        static_cast<int>(feature_counts.size()), 2, [&](int idx) {
            std::vector<double> errs;
            for (std::uint64_t seed = 1; seed <= 10; ++seed) {
                const auto model = train_random_feature_model(
                    FeatureFamily::trig(1), feature_counts[static_cast<size_t>(idx)],
                    InitDistribution::student_t(1), target, 3000, SobolevFitSpec::l2(1),
                    seed);
                SeededStream test(seed, kStreamTest);
                errs.push_back(empirical_l2_error(
                    model, target, sample_gaussian_weight(1, test, 5000)));
            }
            medians[static_cast<size_t>(idx)] = randfeat::median(errs);
        });
    int inversions = 0;
    for (size_t i = 1; i < medians.size(); ++i) {
        if (medians[i] > medians[i - 1]) ++inversions;
    }
    CHECK(inversions <= 1);
    CHECK(medians.back() < medians.front());
}

TEST_CASE("fourier model trains and reports modulus errors") {
    const int m = 1, N = 4, J = 60;
    const Eigen::VectorXd theta_star = Eigen::VectorXd::Constant(1, 0.8);
    auto target_fn = [theta_star](const Eigen::VectorXd& u, const MultiIndex& alpha) {
        return fourier_feature_eval(theta_star, u, alpha);
    };
    TrainOptions options;
    options.forced_params = theta_star;
    const auto model = train_random_fourier(N, InitDistribution::student_t(m), target_fn,
                                            J, SobolevFitSpec::l2(m), 31, options);
    // exact representability in the complex span
    SeededStream test(32, kStreamTest);
    const Eigen::MatrixXd X = sample_gaussian_weight(m, test, 50);
    const Target real_part = Target::scalar(1, [theta_star](const Eigen::VectorXd& u) {
        return std::cos(theta_star[0] * u[0]);
    });
    double max_gap = 0.0;
    for (int j = 0; j < X.cols(); ++j) {
        const auto v = model.evaluate_complex(X.col(j), MultiIndex::zero(1));
        max_gap = std::max(max_gap,
                           std::abs(v - fourier_feature_eval(theta_star, X.col(j),
                                                             MultiIndex::zero(1))));
    }
    CHECK(max_gap < 1e-8);
    (void)real_part;
}

TEST_CASE("model serialization round-trips bit-exactly") {
    const auto model = train_random_feature_model(
        FeatureFamily::trig(2), 7, InitDistribution::student_t(2), Target::gaussian_bump(2),
        80, SobolevFitSpec::l2(2), 41);
    const std::string path = "test_model_roundtrip.json";
    save_model(model, path);
    const auto loaded = load_model(path);
    REQUIRE(loaded.params.size() == model.params.size());
    REQUIRE(loaded.readout.size() == model.readout.size());
    CHECK(std::memcmp(loaded.params.data(), model.params.data(),
                      sizeof(double) * model.params.size()) == 0);
    CHECK(std::memcmp(loaded.readout.data(), model.readout.data(),
                      sizeof(double) * model.readout.size()) == 0);
    CHECK(loaded.N == model.N);
    CHECK(loaded.seed == model.seed);
    CHECK(loaded.ledger.total() == model.ledger.total());
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_model("does_not_exist.json"), SerializationError);
}

TEST_CASE("neuron model rejects unsupported derivative orders") {
    SobolevFitSpec spec = SobolevFitSpec::l2(1);
    spec.k = 1;
    CHECK_THROWS_AS(train_random_nn(4, InitDistribution::student_t_pair(1),
                                    Target::gaussian_bump(1), 20, spec,
                                    Activation::relu(), 1),
                    DerivativeOrderExceeded);
}

TEST_CASE("scalar targets refuse derivative requests") {
    const Target t = Target::scalar(1, [](const Eigen::VectorXd&) { return 1.0; });
    SobolevFitSpec spec = SobolevFitSpec::l2(1);
    spec.k = 1;
    CHECK_THROWS_AS(train_random_feature_model(FeatureFamily::trig(1), 4,
                                               InitDistribution::student_t(1), t, 20,
                                               spec, 1),
                    InvalidTarget);
}
