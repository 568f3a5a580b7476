#include "randfeat/heat.hpp"

#include <cassert>
#include <cmath>

#include "randfeat/errors.hpp"

namespace randfeat {

HeatProblem HeatProblem::benchmark_config(int m) {
    HeatProblem p;
    p.lambda = 4.0;
    p.t = 1.0;
    p.radius = 4.0 * std::pow(static_cast<double>(m), 0.4);
    p.m = m;
    return p;
}

bool HeatProblem::scaling_condition_holds() const {
    return radius * radius <=
           std::sqrt(lambda * t) / (std::sqrt(2.0) * M_E) * (m + 2);
}

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 3e-16;

// series representation, valid for x < a + 1
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw SeriesNotConverged("incomplete gamma series stalled");
}

// Lentz continued fraction for Q(a, x), valid for x >= a + 1
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) {
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw SeriesNotConverged("incomplete gamma continued fraction stalled");
}

}  // namespace

double regularized_gamma_p(double a, double x) {
    assert(a > 0.0 && x >= 0.0);
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double chi_square_cdf(double x, double dof) {
    if (x <= 0.0) return 0.0;
    return regularized_gamma_p(0.5 * dof, 0.5 * x);
}

double noncentral_chi_square_cdf(double x, int dof, double noncentrality) {
    assert(dof >= 1 && noncentrality >= 0.0);
    if (x <= 0.0) return 0.0;
    const double half = 0.5 * noncentrality;
    if (half == 0.0) return chi_square_cdf(x, dof);

    // Poisson weights e^{-half} half^i / i!, expanded outward from the mode
    // until the remaining mass is below 1e-13 (the CDF factors are <= 1, so
    // the truncation error is bounded by that mass)
    const int mode = static_cast<int>(half);
    const double log_w_mode = -half + mode * std::log(half) - std::lgamma(mode + 1.0);
    double w_up = std::exp(log_w_mode);
    double w_down = w_up;
    double total = w_up;
    double cdf = w_up * chi_square_cdf(x, dof + 2.0 * mode);
    int up = mode;
    int down = mode;
    for (int iter = 0; iter < 100000; ++iter) {
        if (1.0 - total < 1e-13) {
            return std::min(std::max(cdf, 0.0), 1.0);
        }
        ++up;
        w_up *= half / up;
        cdf += w_up * chi_square_cdf(x, dof + 2.0 * up);
        total += w_up;
        if (down > 0) {
            w_down *= down / half;
            --down;
            cdf += w_down * chi_square_cdf(x, dof + 2.0 * down);
            total += w_down;
        }
    }
    throw SeriesNotConverged("noncentral chi-square Poisson mixture stalled");
}

double heat_solution(const HeatProblem& problem, const Eigen::VectorXd& u) {
    assert(u.size() == problem.m && problem.t > 0.0);
    const double scale = 2.0 * problem.lambda * problem.t;
    return noncentral_chi_square_cdf(problem.radius * problem.radius / scale, problem.m,
                                     u.squaredNorm() / scale);
}

Target heat_target(const HeatProblem& problem) {
    return Target::scalar(problem.m, [problem](const Eigen::VectorXd& u) {
        return heat_solution(problem, u);
    });
}

}  // namespace randfeat
