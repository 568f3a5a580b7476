#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "randfeat/analysis.hpp"
#include "randfeat/distributions.hpp"
#include "randfeat/errors.hpp"

using namespace randfeat;

namespace {

QuadratureGrid default_grid() {
    QuadratureGrid g = QuadratureGrid::uniform(-40.0, 40.0, 40, 32);
    g.tolerance = 1e-10;
    return g;
}

}  // namespace

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
    const auto& rule = GaussLegendre::get(8);
    CHECK(rule.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
    // degree-15 polynomial exact with 8 nodes
    double acc = 0.0;
    for (int i = 0; i < 8; ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], 14);
    CHECK(acc == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("quadrature convergence gate") {
    QuadratureGrid grid = QuadratureGrid::uniform(0.0, M_PI, 2, 8);
    grid.tolerance = 1e-12;
    const auto result = integrate(grid, [](double x) { return std::sin(x); });
    CHECK(result.value == doctest::Approx(2.0).epsilon(1e-12));

    // an oscillatory integrand on a coarse non-refinable budget fails the gate
    QuadratureGrid bad = QuadratureGrid::uniform(0.0, 1.0, 1, 2);
    bad.max_doublings = 1;
    bad.tolerance = 1e-14;
    CHECK_THROWS_AS(integrate(bad, [](double x) { return std::sin(300.0 * x); }),
                    ToleranceNotReached);
}

TEST_CASE("fourier transform of the gaussian") {
    auto f = [](double u) { return std::exp(-0.5 * u * u); };
    const auto at0 = fourier_transform_1d(f, 0.0, default_grid());
    CHECK(at0.real() == doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-8));
    CHECK(std::abs(at0.imag()) < 1e-10);
    for (double xi : {0.5, 1.0, 2.0, 3.5}) {
        const auto v = fourier_transform_1d(f, xi, default_grid());
        CHECK(v.real() ==
              doctest::Approx(std::sqrt(2.0 * M_PI) * std::exp(-0.5 * xi * xi))
                  .epsilon(1e-8));
    }
}

TEST_CASE("fourier transform of the box indicator") {
    auto box = [](double u) { return std::abs(u) <= 1.0 ? 1.0 : 0.0; };
    // integrate exactly over the support to avoid the discontinuity
    QuadratureGrid grid = QuadratureGrid::uniform(-1.0, 1.0, 4, 32);
    const auto v = fourier_transform_1d(box, 1.0, grid);
    CHECK(v.real() == doctest::Approx(2.0 * std::sin(1.0)).epsilon(1e-10));
}

TEST_CASE("odd functions have purely imaginary transforms") {
    auto odd = [](double u) { return u * std::exp(-u * u); };
    for (double xi : {0.3, 1.1, 2.9}) {
        const auto v = fourier_transform_1d(odd, xi, default_grid());
        CHECK(std::abs(v.real()) < 1e-10);
    }
}

TEST_CASE("fourier inversion recovers smooth decaying functions") {
    auto f = [](double u) { return std::exp(-0.5 * u * u) * (1.0 + 0.3 * std::cos(u)); };
    QuadratureGrid xi_grid = QuadratureGrid::uniform(-30.0, 30.0, 30, 32);
    xi_grid.tolerance = 1e-9;
    auto f_hat = [&](double xi) { return fourier_transform_1d(f, xi, default_grid()); };
    for (double u : {-1.5, 0.0, 0.7}) {
        const auto recovered = inverse_fourier_1d(f_hat, u, xi_grid);
        CHECK(std::abs(recovered.real() - f(u)) < 1e-6);
        CHECK(std::abs(recovered.imag()) < 1e-8);
    }
}

TEST_CASE("barron constant: gaussian target with cauchy frequencies") {
    auto f_hat = [](double v) {
        return Complex(std::sqrt(2.0 * M_PI) * std::exp(-0.5 * v * v), 0.0);
    };
    const auto cauchy = InitDistribution::student_t(1);
    auto p = [&](double v) { return cauchy.pdf(Eigen::VectorXd::Constant(1, v)); };
    const double cf = barron_constant_trig(f_hat, p, 2.0, 0, default_grid());
    CHECK(cf == doctest::Approx(std::sqrt(3.0 * std::pow(M_PI, 2.5))).epsilon(1e-8));

    // r = 1 ignores the density entirely
    auto p_other = [](double) { return 0.123; };
    const double c1a = barron_constant_trig(f_hat, p, 1.0, 0, default_grid());
    const double c1b = barron_constant_trig(f_hat, p_other, 1.0, 0, default_grid());
    CHECK(c1a == doctest::Approx(c1b).epsilon(1e-12));
    CHECK(c1a == doctest::Approx(2.0 * M_PI).epsilon(1e-8));  // int |f_hat| = 2 pi

    // the derivative weight grows the constant
    const double ck1 = barron_constant_trig(f_hat, p, 2.0, 1, default_grid());
    CHECK(ck1 > cf);
}

TEST_CASE("barron constant symbolic vs numeric density routes agree") {
    auto f_hat = [](double v) {
        return Complex(std::sqrt(2.0 * M_PI) * std::exp(-0.5 * v * v), 0.0);
    };
    const auto cauchy = InitDistribution::student_t(1);
    auto p_numeric = [&](double v) { return cauchy.pdf(Eigen::VectorXd::Constant(1, v)); };
    const int k = 1;
    const double via_pdf = barron_constant_trig(f_hat, p_numeric, 2.0, k, default_grid());
    // substituting the closed-form density: C_f^2 = pi int |f_hat|^2 (1+v^2)^{k+1} dv
    const double direct = std::sqrt(
        integrate(default_grid(), [&](double v) {
            return M_PI * std::norm(f_hat(v)) * std::pow(1.0 + v * v, k + 1);
        }).value);
    CHECK(via_pdf == doctest::Approx(direct).epsilon(1e-8));
}

TEST_CASE("barron constant at m = 2 against a radial-reduction oracle") {
    // f = exp(-||u||^2/2) has f_hat = 2 pi exp(-||v||^2/2); with t_2
    // frequencies and r = 2, k = 0 the integrand is radial, so the tensor
    // quadrature can be checked against a 1-D radial integral
    const auto t2 = InitDistribution::student_t(2);
    const double c2d = barron_constant_trig_2d(
        [](double x, double y) {
            return Complex(2.0 * M_PI * std::exp(-0.5 * (x * x + y * y)), 0.0);
        },
        [&](double x, double y) {
            Eigen::VectorXd v(2);
            v << x, y;
            return t2.pdf(v);
        },
        2.0, 0, QuadratureGrid::uniform(-30.0, 30.0, 30, 24));
    // radial: C^2 = int_0^inf |f_hat(r)|^2 / p(r) 2 pi r dr
    QuadratureGrid radial = QuadratureGrid::uniform(0.0, 30.0, 30, 32);
    radial.tolerance = 1e-12;
    const double c_radial = std::sqrt(
        integrate(radial, [&](double r) {
            Eigen::VectorXd v(2);
            v << r, 0.0;
            const double f_hat_sq = std::pow(2.0 * M_PI * std::exp(-0.5 * r * r), 2);
            return f_hat_sq / t2.pdf(v) * 2.0 * M_PI * r;
        }).value);
    CHECK(c2d == doctest::Approx(c_radial).epsilon(1e-7));
}

TEST_CASE("ridgelet profile: support, moments, tabulation accuracy") {
    const RidgeletProfile psi;
    CHECK(psi.psi_hat(0.999) == 0.0);
    CHECK(psi.psi_hat(2.001) == 0.0);
    CHECK(psi.psi_hat(1.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(psi.psi_hat(1.5) > 0.0);

    // tabulated inverse transform against direct quadrature
    for (double x : {-37.3, -5.0, -0.4, 0.0, 1.7, 12.9, 80.0}) {
        const Complex table = psi.psi(x);
        const Complex exact = psi.psi_exact(x);
        CHECK(std::abs(table - exact) < 1e-6);
    }

    // vanishing moments (psi_hat = 0 near the origin)
    QuadratureGrid grid = QuadratureGrid::uniform(-60.0, 60.0, 60, 16);
    grid.tolerance = 1e-8;
    for (int j = 0; j <= 2; ++j) {
        CHECK(std::abs(psi.moment(j, grid)) < 1e-6);
    }
}

TEST_CASE("ridgelet transform basics") {
    const RidgeletProfile psi;
    QuadratureGrid grid = QuadratureGrid::uniform(-8.0, 8.0, 16, 16);
    grid.tolerance = 1e-9;
    auto zero = [](double) { return 0.0; };
    CHECK(std::abs(ridgelet_transform_1d(psi, zero, 1.0, 0.5, grid)) == 0.0);
    auto f = [](double u) { return std::exp(-0.5 * u * u); };
    CHECK(std::abs(ridgelet_transform_1d(psi, f, 0.0, 0.3, grid)) == 0.0);
    CHECK(std::abs(ridgelet_transform_1d(psi, f, 1.0, 0.0, grid)) > 0.0);
}

TEST_CASE("tanh distributional fourier transform validated by cutoff extrapolation") {
    // F[tanh](xi) on R \ {0} should be -i pi / sinh(pi xi / 2); check by
    // transforming tanh * gaussian cutoff and widening the cutoff
    for (double xi : {0.7, 1.3, 2.1}) {
        const Complex closed = activation_fourier_transform(ActivationKind::Tanh, xi);
        double previous_err = 1e9;
        std::vector<Complex> values;
        for (double width : {20.0, 40.0, 80.0}) {
            auto windowed = [width](double u) {
                return std::tanh(u) * std::exp(-0.5 * u * u / (width * width));
            };
            QuadratureGrid grid =
                QuadratureGrid::uniform(-8.0 * width, 8.0 * width,
                                        static_cast<int>(16.0 * width), 16);
            grid.tolerance = 1e-9;
            const Complex windowed_ft = fourier_transform_1d(windowed, xi, grid);
            values.push_back(windowed_ft);
            const double err = std::abs(windowed_ft - closed) / std::abs(closed);
            CHECK(err < previous_err);
            previous_err = err;
        }
        CHECK(previous_err < 5e-4);
        // the gaussian window perturbs at order width^-2, so a two-point
        // Richardson extrapolation in the width should land much closer
        const Complex extrapolated = (4.0 * values[2] - values[1]) / 3.0;
        CHECK(std::abs(extrapolated - closed) / std::abs(closed) < 2e-5);
    }
}

TEST_CASE("relu and softplus distributional transforms validated numerically") {
    // relu(u) - u/2 = |u|/2 is even and polynomially bounded; its windowed
    // transform converges to -1/xi^2 away from 0
    for (double xi : {0.9, 1.7}) {
        const Complex closed = activation_fourier_transform(ActivationKind::Relu, xi);
        const double width = 60.0;
        auto windowed = [width](double u) {
            return 0.5 * std::abs(u) * std::exp(-0.5 * u * u / (width * width));
        };
        QuadratureGrid grid = QuadratureGrid::uniform(-8.0 * width, 8.0 * width, 960, 16);
        grid.tolerance = 1e-9;
        const Complex ft = fourier_transform_1d(windowed, xi, grid);
        CHECK(std::abs(ft - closed) / std::abs(closed) < 2e-3);
    }
    // softplus(u) - relu(u) is integrable; transforms add
    for (double xi : {0.8, 1.6}) {
        const Complex closed_soft =
            activation_fourier_transform(ActivationKind::Softplus, xi);
        const Complex closed_relu =
            activation_fourier_transform(ActivationKind::Relu, xi);
        auto gap = [](double u) { return std::log1p(std::exp(-std::abs(u))); };
        QuadratureGrid grid = QuadratureGrid::uniform(-80.0, 80.0, 80, 32);
        grid.tolerance = 1e-10;
        const Complex gap_ft = fourier_transform_1d(gap, xi, grid);
        CHECK(std::abs((closed_relu + gap_ft) - closed_soft) / std::abs(closed_soft) <
              1e-6);
    }
}

TEST_CASE("admissibility constants are nonzero and scale as expected") {
    const RidgeletProfile psi;
    const Complex c1 = admissibility_constant(psi, ActivationKind::Tanh, 1);
    CHECK(std::abs(c1) > 0.0);
    // tanh transform is purely imaginary, psi_hat real: C is imaginary
    CHECK(std::abs(c1.real()) < 1e-12 * std::abs(c1));

    // convergence under node refinement
    const Complex c1_fine = admissibility_constant(psi, ActivationKind::Tanh, 1, 64);
    CHECK(std::abs(c1 - c1_fine) < 1e-6 * std::abs(c1));

    // Example-pattern lower bound with the constant fitted at m = 1
    const double fitted = std::abs(c1) * (psi.zeta2() / (2.0 * M_PI));
    for (int m = 2; m <= 3; ++m) {
        const Complex cm = admissibility_constant(psi, ActivationKind::Tanh, m);
        CHECK(std::abs(cm) >= fitted * std::pow(2.0 * M_PI / psi.zeta2(), m) * (1 - 1e-9));
    }

    // all Example activations admissible at m = 1
    for (auto kind : {ActivationKind::Sigmoid, ActivationKind::Softplus,
                      ActivationKind::Relu}) {
        CHECK(std::abs(admissibility_constant(psi, kind, 1)) > 0.0);
    }
}

TEST_CASE("product weight constants") {
    auto w0 = [](double s) { return std::exp(-0.5 * s * s) / std::sqrt(2.0 * M_PI); };
    const QuadratureGrid grid = QuadratureGrid::uniform(-40.0, 40.0, 40, 32);
    const auto at0 = product_weight_constant(w0, 0.0, 2.0, 5, grid);
    CHECK(at0.base == 1.0);
    CHECK(at0.bound == doctest::Approx(std::pow(5.0, 0.5)).epsilon(1e-12));

    const auto gaussian = product_weight_constant(w0, 1.0, 2.0, 1, grid);
    // oracle: E|s| = sqrt(2/pi) for the standard normal, so the integral is
    // 1 + 2 E|s| + E s^2 = 2 + 2 sqrt(2/pi)
    const double closed = std::sqrt(2.0 + 2.0 * std::sqrt(2.0 / M_PI));
    CHECK(gaussian.base == doctest::Approx(closed).epsilon(1e-10));

    // bound scales exactly as m^{gamma + 1/p}
    const auto m4 = product_weight_constant(w0, 1.0, 2.0, 4, grid);
    CHECK(m4.bound / gaussian.bound == doctest::Approx(std::pow(4.0, 1.5)).epsilon(1e-12));
}

TEST_CASE("rate fitting") {
    std::vector<std::pair<double, double>> exact;
    for (double n : {16.0, 32.0, 64.0, 128.0}) exact.emplace_back(n, 3.0 / std::sqrt(n));
    const RateFit fit = fit_rate(exact);
    CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<std::pair<double, double>> constant;
    for (double n : {16.0, 32.0, 64.0}) constant.emplace_back(n, 0.25);
    CHECK(fit_rate(constant).slope == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(fit_rate({{1.0, 0.1}, {2.0, 0.05}}), NonPositiveError);
    CHECK_THROWS_AS(fit_rate({{1.0, 0.1}, {2.0, -0.05}, {4.0, 0.01}}), NonPositiveError);
}

TEST_CASE("barron ridgelet bound is finite and grows with k") {
    const RidgeletProfile psi;
    auto f_hat_derivs = [](double xi, int order) {
        double h0 = 1.0, h1 = xi;
        if (order == 0) h1 = 1.0;
        for (int j = 2; j <= order; ++j) {
            const double h2 = xi * h1 - (j - 1) * h0;
            h0 = h1;
            h1 = h2;
        }
        const double he = order == 0 ? 1.0 : h1;
        const double sign = order % 2 == 1 ? -1.0 : 1.0;
        return Complex(sign * he * std::sqrt(2.0 * M_PI) * std::exp(-0.5 * xi * xi), 0.0);
    };
    QuadratureGrid grid = QuadratureGrid::uniform(-30.0, 30.0, 30, 32);
    grid.tolerance = 1e-8;
    const double bound_k0 = barron_ridgelet_bound_1d(f_hat_derivs, psi, 0.0, 0, 2.0, grid);
    const double bound_k1 = barron_ridgelet_bound_1d(f_hat_derivs, psi, 0.0, 1, 2.0, grid);
    CHECK(bound_k0 > 0.0);
    CHECK(std::isfinite(bound_k0));
    CHECK(bound_k1 > bound_k0);
}
