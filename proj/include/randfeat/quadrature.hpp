#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "randfeat/errors.hpp"

namespace randfeat {

/// Gauss-Legendre nodes and weights on [-1, 1], cached per node count.
struct GaussLegendre {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
    static const GaussLegendre& get(int n);
};

/// Composite Gauss-Legendre rule over explicit panel breakpoints, with an
/// error estimate obtained by panel doubling: a value is accepted only once
/// splitting every panel changes it by less than the tolerance.
struct QuadratureGrid {
    std::vector<double> breakpoints;
    int nodes_per_panel = 32;
    double tolerance = 1e-10;
    int max_doublings = 8;

    static QuadratureGrid uniform(double a, double b, int panels, int nodes = 32);
    /// Panels clustered near 0 and geometrically coarsening outward to +/-outer
    /// (for peaked integrands with heavy tails).
    static QuadratureGrid symmetric_geometric(double inner, double outer, int nodes = 32);

    QuadratureGrid refined() const;
    double lower() const { return breakpoints.front(); }
    double upper() const { return breakpoints.back(); }
};

template <typename F>
auto panel_sum(const QuadratureGrid& grid, F&& f) {
    const auto& rule = GaussLegendre::get(grid.nodes_per_panel);
    using R = decltype(f(0.0));
    R acc = R(0);
    for (size_t p = 0; p + 1 < grid.breakpoints.size(); ++p) {
        const double a = grid.breakpoints[p];
        const double b = grid.breakpoints[p + 1];
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        R local = R(0);
        for (int i = 0; i < rule.nodes.size(); ++i) {
            local += rule.weights[i] * f(mid + half * rule.nodes[i]);
        }
        acc += half * local;
    }
    return acc;
}

template <typename T>
struct QuadratureResult {
    T value;
    double error_estimate;
};

/// Integrate with the panel-doubling convergence gate. Throws
/// ToleranceNotReached when doubling fails to stabilize the value.
template <typename F>
auto integrate(const QuadratureGrid& grid, F&& f)
    -> QuadratureResult<decltype(f(0.0))> {
    using R = decltype(f(0.0));
    QuadratureGrid current = grid;
    R previous = panel_sum(current, f);
    for (int it = 0; it < grid.max_doublings; ++it) {
        current = current.refined();
        R value = panel_sum(current, f);
        const double delta = std::abs(value - previous);
        if (delta <= grid.tolerance * (1.0 + std::abs(value))) {
            return {value, delta};
        }
        previous = value;
    }
    throw ToleranceNotReached("quadrature did not converge after " +
                              std::to_string(grid.max_doublings) + " doublings");
}

}  // namespace randfeat
