#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "randfeat/activation.hpp"
#include "randfeat/quadrature.hpp"

namespace randfeat {

using Complex = std::complex<double>;
using RealFn = std::function<double(double)>;
using ComplexFn = std::function<Complex(double)>;

/// f_hat(xi) = int e^{-i xi u} f(u) du over the grid's truncated domain,
/// gated by panel doubling. Accepts real- or complex-valued integrands.
template <typename F>
Complex fourier_transform_1d(F&& f, double xi, const QuadratureGrid& grid) {
    try {
        return integrate(grid, [&](double u) {
                   return Complex(f(u)) *
                          std::exp(Complex(0.0, -1.0) * xi * u);
               }).value;
    } catch (const ToleranceNotReached&) {
        throw ToleranceNotReached("fourier_transform_1d: quadrature did not converge");
    }
}

/// Inverse convention: (1/2pi) int f_hat(xi) e^{i xi u} dxi.
template <typename F>
Complex inverse_fourier_1d(F&& f_hat, double u, const QuadratureGrid& grid) {
    try {
        return integrate(grid, [&](double xi) {
                   return Complex(f_hat(xi)) *
                          std::exp(Complex(0.0, 1.0) * xi * u);
               }).value /
               (2.0 * M_PI);
    } catch (const ToleranceNotReached&) {
        throw ToleranceNotReached("inverse_fourier_1d: quadrature did not converge");
    }
}

/// C_f = (int |f_hat|^r (1 + ||v||^2)^{kr/2} / p(v)^{r-1} dv)^{1/r}, m in {1, 2}.
/// Throws Divergent when panel doubling keeps growing the estimate.
double barron_constant_trig(const ComplexFn& f_hat, const RealFn& p_theta, double r,
                            int k, const QuadratureGrid& grid);
double barron_constant_trig_2d(
    const std::function<Complex(double, double)>& f_hat,
    const std::function<double(double, double)>& p_theta, double r, int k,
    const QuadratureGrid& grid);

/// Smooth bump profile: psi_hat(xi) = exp(-1/(1 - tau^2)) on (zeta1, zeta2)
/// with tau the affine map onto (-1, 1), zero elsewhere. psi is its inverse
/// Fourier transform, evaluated through a tabulated real envelope:
///   psi(x) = (width / 4 pi) e^{i x center} E(x width / 2),
///   E(y) = 2 int_0^1 bump(t) cos(y t) dt.
class RidgeletProfile {
public:
    explicit RidgeletProfile(double zeta1 = 1.0, double zeta2 = 2.0);

    double zeta1() const { return zeta1_; }
    double zeta2() const { return zeta2_; }
    double psi_hat(double xi) const;
    /// Tabulated inverse transform (linear interpolation on the envelope).
    Complex psi(double x) const;
    /// Direct quadrature of the inverse transform; reference for tests.
    Complex psi_exact(double x) const;
    /// int u^j psi(u) du by quadrature against a wide smooth even window
    /// (vanishing-moment checks; the window controls the oscillatory tail).
    Complex moment(int j, const QuadratureGrid& grid) const;

private:
    double envelope(double y) const;
    double zeta1_, zeta2_;
    double y_step_;
    std::vector<double> envelope_table_;
};

/// (R_psi f)(a, b) = int psi(a u - b) f(u) ||a|| du at m = 1.
Complex ridgelet_transform_1d(const RidgeletProfile& psi, const RealFn& f, double a,
                              double b, const QuadratureGrid& grid);

/// Distributional Fourier transform of the activation on R \ {0}.
Complex activation_fourier_transform(ActivationKind kind, double xi);

/// C^(psi,rho)_m = (2 pi)^{m-1} int conj(psi_hat(xi)) f_rho_hat(xi) / |xi|^m dxi.
/// Throws NotAdmissible when |C| vanishes.
Complex admissibility_constant(const RidgeletProfile& psi, ActivationKind rho, int m,
                               int nodes = 32, double tolerance = 1e-12);

struct ReconstructionDomain {
    double u_halfwidth = 7.0;    // inner integral over the argument of f
    double a_halfwidth = 6.0;    // outer scale variable
    double b_halfwidth = 100.0;  // outer shift variable
    int nodes = 16;
    double panel_width_a = 0.5;
    double panel_width_b = 2.0;
    double panel_width_u = 1.0;
};

/// Reconstruction of f(u) from its ridgelet transform against the activation:
/// the transform is paired with rho under the scale-invariant measure
/// db da / ||a|| (cancelling the ||a|| of the transform) and normalized by
/// the admissibility constant, conjugated because psi carries a one-sided
/// spectrum. Converges to f(u) as the quadrature domains grow.
double ridgelet_reconstruct_1d(const RidgeletProfile& psi, const RealFn& f,
                               const Activation& rho, Complex admissibility,
                               double u, const ReconstructionDomain& domain);

struct ProductWeightConstant {
    double base;   // C^(gamma,p)_{R,w0}
    double bound;  // base * m^{gamma + 1/p}
};

/// C^(gamma,p)_{R,w0} = (int (1+|s|)^{gamma p} w0(s) ds)^{1/p} for a
/// normalized one-dimensional weight, and its m-scaled product bound.
ProductWeightConstant product_weight_constant(const RealFn& w0, double gamma, double p,
                                              int m, const QuadratureGrid& grid);

struct RateFit {
    double slope;
    double intercept;
    double r_squared;
};

/// Ordinary least squares of ln(error) on ln(N); throws NonPositiveError on
/// non-positive errors or fewer than 3 points.
RateFit fit_rate(const std::vector<std::pair<double, double>>& n_and_error);

/// Upper bound on the ridgelet-Barron norm at m = 1 for t_m (x) t_1 draws:
/// (C1 / zeta1^{1/r}) sup_{zeta in supp psi_hat} sum_{beta <= ceil(gamma)+2}
/// (int |d^beta f_hat(xi)|^r (1+(xi/zeta)^2)^{(2 ceil(gamma)+k+3) r/2}
///      / t1_pdf(xi/zeta)^{r-1} dxi)^{1/r},
/// with C1 = 2^{ceil(gamma)/2} (ceil(gamma)+2)! max_j int |psi_hat^{(j)}|.
/// The sup is taken on a 64-point grid over [zeta1, zeta2].
double barron_ridgelet_bound_1d(
    const std::function<Complex(double xi, int order)>& f_hat_derivs,
    const RidgeletProfile& psi, double gamma, int k, double r,
    const QuadratureGrid& grid);

}  // namespace randfeat
