#pragma once

#include <Eigen/Dense>

#include "randfeat/model.hpp"

namespace randfeat {

/// Heat flow on R^m with ball-indicator initial condition 1_{||u|| <= R}.
struct HeatProblem {
    double lambda = 4.0;
    double t = 1.0;
    double radius = 4.0;
    int m = 1;

    /// the benchmark configuration: lambda = 4, t = 1, R = 4 m^{0.4}
    static HeatProblem benchmark_config(int m);

    /// R^2 <= (sqrt(lambda t) / (sqrt(2) e)) (m + 2), the regime where the
    /// feature count stays polynomial in m.
    bool scaling_condition_holds() const;
};

/// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);

/// Central chi-square CDF with (possibly fractional) dof.
double chi_square_cdf(double x, double dof);

/// Noncentral chi-square CDF via the Poisson mixture of central CDFs,
/// truncated two-sided at Poisson tail mass < 1e-13.
double noncentral_chi_square_cdf(double x, int dof, double noncentrality);

/// f(t, u) = P(||u + sqrt(2 lambda t) Z|| <= R) for the ball indicator: a
/// noncentral chi-square CDF with m dof, noncentrality ||u||^2 / (2 lambda t),
/// threshold R^2 / (2 lambda t). Values lie in [0, 1].
double heat_solution(const HeatProblem& problem, const Eigen::VectorXd& u);

/// k = 0 target wrapping heat_solution.
Target heat_target(const HeatProblem& problem);

}  // namespace randfeat
