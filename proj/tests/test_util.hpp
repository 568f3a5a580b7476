#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "randfeat/multi_index.hpp"
#include "randfeat/quadrature.hpp"

namespace randfeat::testing {

using ScalarField = std::function<double(const Eigen::VectorXd&)>;

/// Central finite difference for partial_alpha f, applied one derivative at a
/// time; the step is tuned per coordinate scale.
inline double fd_derivative(const ScalarField& f, const Eigen::VectorXd& u,
                            const MultiIndex& alpha, double base_step = 5e-5) {
    int coord = -1;
    for (int l = 0; l < alpha.dim(); ++l) {
        if (alpha[l] > 0) {
            coord = l;
            break;
        }
    }
    if (coord < 0) return f(u);
    MultiIndex reduced = alpha;
    reduced.entries[static_cast<size_t>(coord)] -= 1;
    const double h = base_step * std::max(1.0, std::abs(u[coord]));
    Eigen::VectorXd up = u, down = u;
    up[coord] += h;
    down[coord] -= h;
    return (fd_derivative(f, up, reduced, base_step) -
            fd_derivative(f, down, reduced, base_step)) /
           (2.0 * h);
}

inline double rel_err(double value, double reference) {
    return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

/// CDF of a symmetric 1-D density by cumulative Gauss-Legendre panels on a
/// geometric grid; the independent oracle for sampler KS tests.
class QuadratureCdf {
public:
    QuadratureCdf(std::function<double(double)> pdf, double inner, double outer)
        : pdf_(std::move(pdf)) {
        breakpoints_.push_back(0.0);
        double x = inner;
        while (x < outer) {
            breakpoints_.push_back(x);
            x *= 2.0;
        }
        breakpoints_.push_back(outer);
        prefix_.resize(breakpoints_.size(), 0.0);
        for (size_t p = 0; p + 1 < breakpoints_.size(); ++p) {
            prefix_[p + 1] = prefix_[p] + panel(breakpoints_[p], breakpoints_[p + 1]);
        }
    }

    double operator()(double x) const {
        const double ax = std::abs(x);
        double half;
        if (ax >= breakpoints_.back()) {
            half = prefix_.back();
        } else {
            const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), ax);
            const size_t p = static_cast<size_t>(it - breakpoints_.begin()) - 1;
            half = prefix_[p] + panel(breakpoints_[p], ax);
        }
        const double result = x >= 0.0 ? 0.5 + half : 0.5 - half;
        return std::min(std::max(result, 0.0), 1.0);
    }

private:
    double panel(double a, double b) const {
        if (b <= a) return 0.0;
        const auto& rule = GaussLegendre::get(32);
        double acc = 0.0;
        for (int i = 0; i < rule.nodes.size(); ++i) {
            acc += rule.weights[i] * pdf_(0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i]);
        }
        return 0.5 * (b - a) * acc;
    }

    std::function<double(double)> pdf_;
    std::vector<double> breakpoints_;
    std::vector<double> prefix_;
};

inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double ks = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        ks = std::max(ks, std::abs(f - static_cast<double>(i + 1) / n));
        ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
    }
    return ks;
}

}  // namespace randfeat::testing
