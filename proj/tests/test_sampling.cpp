#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "randfeat/distributions.hpp"
#include "randfeat/quadrature.hpp"
#include "randfeat/rng.hpp"
#include "test_util.hpp"

using namespace randfeat;

namespace {

// The closed-form t_m density written out directly, so the oracle side does
// not share code with the sampler under test.
double t_density(int m, double squared_norm) {
    return std::exp(std::lgamma(0.5 * (m + 1))) / std::pow(M_PI, 0.5 * (m + 1)) *
           std::pow(1.0 + squared_norm, -0.5 * (m + 1));
}

}  // namespace

using randfeat::testing::QuadratureCdf;
using randfeat::testing::ks_statistic;

TEST_CASE("reproducibility: equal seeds give byte-identical sample arrays") {
    SeededStream s1(77, kStreamInit);
    SeededStream s2(77, kStreamInit);
    const Eigen::MatrixXd a = sample_student_t(3, s1, 500);
    const Eigen::MatrixXd b = sample_student_t(3, s2, 500);
    CHECK(std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0);
}

TEST_CASE("student t pdf values") {
    const auto t1 = InitDistribution::student_t(1);
    CHECK(t1.pdf(Eigen::VectorXd::Zero(1)) == doctest::Approx(1.0 / M_PI).epsilon(1e-12));
    const auto g1 = InitDistribution::gaussian(1);
    CHECK(g1.pdf(Eigen::VectorXd::Zero(1)) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-12));
    const auto pair1 = InitDistribution::student_t_pair(1);
    CHECK(pair1.pdf(Eigen::VectorXd::Zero(2)) ==
          doctest::Approx(1.0 / (M_PI * M_PI)).epsilon(1e-12));
    // literal footnote formula at a random point, m = 3
    const auto t3 = InitDistribution::student_t(3);
    Eigen::VectorXd x(3);
    x << 0.3, -1.2, 2.0;
    CHECK(t3.pdf(x) == doctest::Approx(t_density(3, x.squaredNorm())).epsilon(1e-12));
}

TEST_CASE("init distribution pdfs integrate to one (m <= 2)") {
    const auto t1 = InitDistribution::student_t(1);
    QuadratureGrid grid = QuadratureGrid::symmetric_geometric(0.5, 20000.0, 32);
    grid.tolerance = 1e-9;
    const double mass1 =
        integrate(grid, [&](double x) {
            return t1.pdf(Eigen::VectorXd::Constant(1, x));
        }).value;
    CHECK(mass1 == doctest::Approx(1.0).epsilon(1e-3));

    const auto t2 = InitDistribution::student_t(2);
    const QuadratureGrid grid2 = QuadratureGrid::symmetric_geometric(0.5, 8000.0, 24);
    double mass2 = 0.0;
    // tensor panels; the heavy t_2 tail is covered geometrically
    mass2 = panel_sum(grid2, [&](double x) {
        return panel_sum(grid2, [&](double y) {
            Eigen::VectorXd p(2);
            p << x, y;
            return t2.pdf(p);
        });
    });
    CHECK(mass2 == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("student t sampler: KS against the quadrature CDF oracle") {
    SeededStream stream(2024, kStreamInit);
    const int n = 1000000;
    const Eigen::MatrixXd draws = sample_student_t(1, stream, n);
    std::vector<double> samples(draws.data(), draws.data() + n);

    const QuadratureCdf oracle([](double x) { return t_density(1, x * x); }, 0.5, 1e9);
    CHECK(ks_statistic(samples, oracle) < 0.002);

    // ratio construction at m = 1 equals the analytic Cauchy law
    const auto cauchy_cdf = [](double x) { return std::atan(x) / M_PI + 0.5; };
    CHECK(ks_statistic(samples, cauchy_cdf) < 0.002);

    // empirical median near zero by symmetry
    std::nth_element(samples.begin(), samples.begin() + n / 2, samples.end());
    CHECK(std::abs(samples[n / 2]) < 0.01);
}

TEST_CASE("student t sampler: kernel density at zero within 2% of 1/pi") {
    SeededStream stream(31337, kStreamInit);
    const int n = 1000000;
    const Eigen::MatrixXd draws = sample_student_t(1, stream, n);
    const double h = 0.05;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = draws(0, i) / h;
        acc += std::exp(-0.5 * z * z);
    }
    const double kde = acc / (n * h * std::sqrt(2.0 * M_PI));
    CHECK(std::abs(kde - 1.0 / M_PI) < 0.02 / M_PI);
}

TEST_CASE("gaussian sampler statistics") {
    SeededStream stream(5150, kStreamData);
    const int n = 1000000;
    const Eigen::MatrixXd draws = sample_gaussian_weight(3, stream, n);

    const Eigen::VectorXd mean = draws.rowwise().mean();
    for (int l = 0; l < 3; ++l) CHECK(std::abs(mean[l]) < 0.005);

    const Eigen::MatrixXd centered = draws.colwise() - mean;
    const Eigen::MatrixXd cov = centered * centered.transpose() / double(n - 1);
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            CHECK(std::abs(cov(r, c) - (r == c ? 1.0 : 0.0)) < 0.01);
        }
    }

    const auto normal_cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
    for (int l = 0; l < 3; ++l) {
        std::vector<double> coord(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) coord[static_cast<size_t>(i)] = draws(l, i);
        CHECK(ks_statistic(coord, normal_cdf) < 0.002);
    }
}

TEST_CASE("init and data streams are uncorrelated") {
    SeededStream init(99, kStreamInit);
    SeededStream data(99, kStreamData);
    const int n = 100000;
    double sxy = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = init.next_normal();
        const double y = data.next_normal();
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    const double r = (sxy - sx * sy / n) /
                     std::sqrt((sxx - sx * sx / n) * (syy - sy * sy / n));
    CHECK(std::abs(r) < 0.01);
}

TEST_CASE("custom density provides pdf but no sampler") {
    const auto custom = InitDistribution::custom_density(
        1, [](const Eigen::VectorXd& x) { return std::exp(-std::abs(x[0])) / 2.0; });
    CHECK(custom.pdf(Eigen::VectorXd::Zero(1)) == doctest::Approx(0.5));
    CHECK_FALSE(custom.has_sampler());
    SeededStream stream(1, 1);
    CHECK_THROWS(custom.sample(stream));
}
