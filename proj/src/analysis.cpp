#include "randfeat/analysis.hpp"

#include <cassert>
#include <cmath>

#include "randfeat/errors.hpp"

namespace randfeat {

namespace {

constexpr Complex kI{0.0, 1.0};

// standard bump on (-1, 1)
double bump(double t) {
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
}

template <typename Fn>
auto converge_or_throw(const QuadratureGrid& grid, Fn&& f, const char* what) {
    try {
        return integrate(grid, std::forward<Fn>(f)).value;
    } catch (const ToleranceNotReached&) {
        throw ToleranceNotReached(std::string(what) + ": quadrature did not converge");
    }
}

}  // namespace

namespace {

// doubling loop with a divergence check on the growth pattern
template <typename Fn>
double barron_integral(const QuadratureGrid& grid, Fn&& integrand, double r) {
    QuadratureGrid current = grid;
    double previous = panel_sum(current, integrand);
    int growing = 0;
    for (int it = 0; it < grid.max_doublings; ++it) {
        current = current.refined();
        const double value = panel_sum(current, integrand);
        const double delta = std::abs(value - previous);
        if (delta <= grid.tolerance * (1.0 + std::abs(value))) {
            return std::pow(value, 1.0 / r);
        }
        growing = value > previous * 1.1 ? growing + 1 : 0;
        if (growing >= 3) {
            throw Divergent("barron_constant_trig: estimates keep growing");
        }
        previous = value;
    }
    throw ToleranceNotReached("barron_constant_trig: quadrature did not converge");
}

}  // namespace

double barron_constant_trig(const ComplexFn& f_hat, const RealFn& p_theta, double r,
                            int k, const QuadratureGrid& grid) {
    assert(r >= 1.0);
    auto integrand = [&](double v) {
        const double mag = std::abs(f_hat(v));
        const double weight = std::pow(1.0 + v * v, 0.5 * k * r);
        return std::pow(mag, r) * weight / std::pow(p_theta(v), r - 1.0);
    };
    return barron_integral(grid, integrand, r);
}

double barron_constant_trig_2d(
    const std::function<Complex(double, double)>& f_hat,
    const std::function<double(double, double)>& p_theta, double r, int k,
    const QuadratureGrid& grid) {
    auto integrand = [&](double x) {
        auto inner = [&](double y) {
            const double mag = std::abs(f_hat(x, y));
            const double weight = std::pow(1.0 + x * x + y * y, 0.5 * k * r);
            return std::pow(mag, r) * weight / std::pow(p_theta(x, y), r - 1.0);
        };
        return panel_sum(grid, inner);
    };
    return barron_integral(grid, integrand, r);
}

RidgeletProfile::RidgeletProfile(double zeta1, double zeta2)
    : zeta1_(zeta1), zeta2_(zeta2) {
    assert(0.0 < zeta1 && zeta1 < zeta2);
    // envelope table out to y beyond any ridgelet argument used downstream
    const double y_max = 400.0;
    y_step_ = 0.0025;
    const int points = static_cast<int>(y_max / y_step_) + 2;
    envelope_table_.resize(static_cast<size_t>(points));
    const auto& rule = GaussLegendre::get(16);
    // E(y) = 2 int_0^1 bump(s) cos(y s) ds; panels fine enough to resolve
    // cos(y s) at the largest tabulated y
    const int panels = 256;
    std::vector<double> bump_vals(static_cast<size_t>(panels) * rule.nodes.size());
    std::vector<double> ss(bump_vals.size());
    for (int p = 0; p < panels; ++p) {
        const double a = static_cast<double>(p) / panels;
        const double b = static_cast<double>(p + 1) / panels;
        for (int i = 0; i < rule.nodes.size(); ++i) {
            const double s = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i];
            const size_t idx = static_cast<size_t>(p) * rule.nodes.size() + i;
            ss[idx] = s;
            bump_vals[idx] = bump(s) * 0.5 * (b - a) * rule.weights[i];
        }
    }
    for (int pt = 0; pt < points; ++pt) {
        const double y = pt * y_step_;
        double acc = 0.0;
        for (size_t i = 0; i < ss.size(); ++i) {
            acc += bump_vals[i] * std::cos(y * ss[i]);
        }
        envelope_table_[static_cast<size_t>(pt)] = 2.0 * acc;
    }
}

double RidgeletProfile::psi_hat(double xi) const {
    const double tau = (2.0 * xi - (zeta1_ + zeta2_)) / (zeta2_ - zeta1_);
    return bump(tau);
}

double RidgeletProfile::envelope(double y) const {
    const double ay = std::abs(y);
    const double pos = ay / y_step_;
    const size_t i0 = static_cast<size_t>(pos);
    if (i0 + 1 >= envelope_table_.size()) return 0.0;
    const double frac = pos - static_cast<double>(i0);
    return envelope_table_[i0] * (1.0 - frac) + envelope_table_[i0 + 1] * frac;
}

Complex RidgeletProfile::psi(double x) const {
    // psi(x) = (1/2pi) int psi_hat(xi) e^{i x xi} dxi over [zeta1, zeta2];
    // substituting xi = center + (width/2)(2t - 1) gives the envelope form
    const double width = zeta2_ - zeta1_;
    const double center = 0.5 * (zeta1_ + zeta2_);
    const double env = envelope(0.5 * x * width);
    return (width / (4.0 * M_PI)) * std::exp(kI * x * center) * env;
}

Complex RidgeletProfile::psi_exact(double x) const {
    const QuadratureGrid grid = QuadratureGrid::uniform(
        zeta1_, zeta2_, std::max(8, static_cast<int>(std::abs(x))), 16);
    auto integrand = [&](double xi) { return psi_hat(xi) * std::exp(kI * x * xi); };
    return panel_sum(grid, integrand) / (2.0 * M_PI);
}

Complex RidgeletProfile::moment(int j, const QuadratureGrid& grid) const {
    // the plain moment integrand only cancels by oscillation over an enormous
    // range; a wide smooth even window makes the cancellation explicit while
    // leaving the transform-side picture (psi_hat vanishing near 0) intact
    const double window = 10.0;
    return converge_or_throw(
        grid,
        [&](double u) {
            return std::pow(u, j) * psi(u) * std::exp(-0.5 * u * u / (window * window));
        },
        "ridgelet moment");
}

Complex ridgelet_transform_1d(const RidgeletProfile& psi, const RealFn& f, double a,
                              double b, const QuadratureGrid& grid) {
    if (a == 0.0) return 0.0;
    return std::abs(a) * converge_or_throw(
                             grid, [&](double u) { return psi.psi(a * u - b) * f(u); },
                             "ridgelet_transform_1d");
}

Complex activation_fourier_transform(ActivationKind kind, double xi) {
    if (xi == 0.0) throw NotAdmissible("distributional transform defined away from 0");
    switch (kind) {
        case ActivationKind::Tanh:
            return -kI * M_PI / std::sinh(0.5 * M_PI * xi);
        case ActivationKind::Sigmoid:
            return -kI * M_PI / std::sinh(M_PI * xi);
        case ActivationKind::Softplus:
            return Complex(-M_PI / (xi * std::sinh(M_PI * xi)), 0.0);
        case ActivationKind::Relu:
            return Complex(-1.0 / (xi * xi), 0.0);
    }
    return 0.0;
}

Complex admissibility_constant(const RidgeletProfile& psi, ActivationKind rho, int m,
                               int nodes, double tolerance) {
    QuadratureGrid grid = QuadratureGrid::uniform(psi.zeta1(), psi.zeta2(), 8, nodes);
    grid.tolerance = 1e-12;
    auto integrand = [&](double xi) {
        return psi.psi_hat(xi) * activation_fourier_transform(rho, xi) /
               std::pow(std::abs(xi), m);
    };
    const Complex c =
        std::pow(2.0 * M_PI, m - 1) * converge_or_throw(grid, integrand, "admissibility");
    if (std::abs(c) < tolerance) {
        throw NotAdmissible("pair (psi, " + to_string(rho) + ") has vanishing constant");
    }
    return c;
}

double ridgelet_reconstruct_1d(const RidgeletProfile& psi, const RealFn& f,
                               const Activation& rho, Complex admissibility,
                               double u, const ReconstructionDomain& domain) {
    // inner integrand of (R_psi f)(a, b) tabulated on fixed Gauss-Legendre
    // nodes in u; the two outer integrals share them
    const auto& rule = GaussLegendre::get(domain.nodes);
    auto make_axis = [&](double halfwidth, double panel_width) {
        const int panels = std::max(2, static_cast<int>(std::ceil(2.0 * halfwidth / panel_width)));
        std::vector<std::pair<double, double>> nodes_weights;
        nodes_weights.reserve(static_cast<size_t>(panels) * rule.nodes.size());
        for (int p = 0; p < panels; ++p) {
            const double a = -halfwidth + 2.0 * halfwidth * p / panels;
            const double b = -halfwidth + 2.0 * halfwidth * (p + 1) / panels;
            for (int i = 0; i < rule.nodes.size(); ++i) {
                nodes_weights.emplace_back(0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i],
                                           0.5 * (b - a) * rule.weights[i]);
            }
        }
        return nodes_weights;
    };
    const auto u_axis = make_axis(domain.u_halfwidth, domain.panel_width_u);
    const auto a_axis = make_axis(domain.a_halfwidth, domain.panel_width_a);
    const auto b_axis = make_axis(domain.b_halfwidth, domain.panel_width_b);

    std::vector<double> f_vals(u_axis.size());
    for (size_t i = 0; i < u_axis.size(); ++i) {
        f_vals[i] = u_axis[i].second * f(u_axis[i].first);
    }

    // the dual pairing carries db da / ||a||, which cancels the ||a|| factor
    // of the transform; with the one-sided psi_hat the constant enters
    // conjugated (psi is complex, rho real)
    Complex outer = 0.0;
    for (const auto& [a, wa] : a_axis) {
        Complex inner_b = 0.0;
        for (const auto& [b, wb] : b_axis) {
            Complex transform = 0.0;
            for (size_t i = 0; i < u_axis.size(); ++i) {
                transform += psi.psi(a * u_axis[i].first - b) * f_vals[i];
            }
            inner_b += wb * transform * rho.derivative(0, a * u - b);
        }
        outer += wa * inner_b;
    }
    return (outer / std::conj(admissibility)).real();
}

ProductWeightConstant product_weight_constant(const RealFn& w0, double gamma, double p,
                                              int m, const QuadratureGrid& grid) {
    assert(p >= 1.0 && gamma >= 0.0 && m >= 1);
    ProductWeightConstant out{};
    if (gamma == 0.0) {
        // integrand is the normalized weight itself
        out.base = 1.0;
    } else {
        auto integrand = [&](double s) {
            return std::pow(1.0 + std::abs(s), gamma * p) * w0(s);
        };
        double value = 0.0;
        try {
            value = integrate(grid, integrand).value;
        } catch (const ToleranceNotReached&) {
            throw Divergent("product_weight_constant: integral did not stabilize");
        }
        if (!std::isfinite(value)) throw Divergent("product_weight_constant: infinite");
        out.base = std::pow(value, 1.0 / p);
    }
    out.bound = out.base * std::pow(static_cast<double>(m), gamma + 1.0 / p);
    return out;
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& n_and_error) {
    if (n_and_error.size() < 3) {
        throw NonPositiveError("fit_rate needs at least 3 points");
    }
    const auto n_points = static_cast<double>(n_and_error.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (const auto& [n, err] : n_and_error) {
        if (!(n > 0.0) || !(err > 0.0)) {
            throw NonPositiveError("fit_rate requires positive N and error");
        }
        const double x = std::log(n);
        const double y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double vxx = sxx - sx * sx / n_points;
    const double vxy = sxy - sx * sy / n_points;
    const double vyy = syy - sy * sy / n_points;
    RateFit fit;
    fit.slope = vxy / vxx;
    fit.intercept = (sy - fit.slope * sx) / n_points;
    fit.r_squared = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
    return fit;
}

double barron_ridgelet_bound_1d(
    const std::function<Complex(double xi, int order)>& f_hat_derivs,
    const RidgeletProfile& psi, double gamma, int k, double r,
    const QuadratureGrid& grid) {
    const int cg = static_cast<int>(std::ceil(gamma));
    const int max_beta = cg + 2;

    // C1 = 2^{cg/2} (cg+2)! max_j int |psi_hat^{(j)}|, derivative integrals by
    // central differences inside the support
    double max_deriv_integral = 0.0;
    const QuadratureGrid support =
        QuadratureGrid::uniform(psi.zeta1(), psi.zeta2(), 64, 16);
    const double h = 1e-4;
    for (int j = 0; j <= max_beta; ++j) {
        auto deriv = [&](double xi) {
            if (j == 0) return std::abs(psi.psi_hat(xi));
            // central finite-difference stencil of order j
            double acc = 0.0;
            for (int i = 0; i <= j; ++i) {
                double binom = 1.0;
                for (int t = 1; t <= i; ++t) binom = binom * (j - t + 1) / t;
                const double sign = (i % 2 == 0) ? 1.0 : -1.0;
                acc += sign * binom * psi.psi_hat(xi + (0.5 * j - i) * h);
            }
            return std::abs(acc / std::pow(h, j));
        };
        max_deriv_integral = std::max(max_deriv_integral, panel_sum(support, deriv));
    }
    double factorial = 1.0;
    for (int j = 2; j <= max_beta; ++j) factorial *= j;
    const double c1 = std::pow(2.0, 0.5 * cg) * factorial * max_deriv_integral;

    const double exponent = 0.5 * (2.0 * cg + k + 3) * r;
    const double t1_norm = 1.0 / M_PI;  // Gamma(1) / pi at m = 1
    double sup = 0.0;
    for (int gi = 0; gi < 64; ++gi) {
        const double zeta = psi.zeta1() + (psi.zeta2() - psi.zeta1()) * (gi + 0.5) / 64.0;
        double sum = 0.0;
        for (int beta = 0; beta <= max_beta; ++beta) {
            auto integrand = [&](double xi) {
                const double scaled = xi / zeta;
                const double density = t1_norm / (1.0 + scaled * scaled);
                return std::pow(std::abs(f_hat_derivs(xi, beta)), r) *
                       std::pow(1.0 + scaled * scaled, exponent) /
                       std::pow(density, r - 1.0);
            };
            double value = 0.0;
            try {
                value = integrate(grid, integrand).value;
            } catch (const ToleranceNotReached&) {
                throw Divergent("barron_ridgelet_bound_1d: integral did not stabilize");
            }
            sum += std::pow(value, 1.0 / r);
        }
        sup = std::max(sup, sum);
    }
    return c1 / std::pow(psi.zeta1(), 1.0 / r) * sup;
}

}  // namespace randfeat
