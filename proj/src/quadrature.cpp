#include "randfeat/quadrature.hpp"

#include <cassert>
#include <cmath>
#include <map>
#include <mutex>

namespace randfeat {

namespace {

// Newton iteration on Legendre polynomials; standard Golub-Welsch-free route.
GaussLegendre compute_rule(int n) {
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return rule;
}

}  // namespace

const GaussLegendre& GaussLegendre::get(int n) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, compute_rule(n)).first;
    }
    return it->second;
}

QuadratureGrid QuadratureGrid::uniform(double a, double b, int panels, int nodes) {
    assert(b > a && panels >= 1);
    QuadratureGrid g;
    g.nodes_per_panel = nodes;
    g.breakpoints.resize(static_cast<size_t>(panels) + 1);
    for (int i = 0; i <= panels; ++i) {
        g.breakpoints[static_cast<size_t>(i)] = a + (b - a) * i / panels;
    }
    return g;
}

QuadratureGrid QuadratureGrid::symmetric_geometric(double inner, double outer, int nodes) {
    assert(0.0 < inner && inner < outer);
    QuadratureGrid g;
    g.nodes_per_panel = nodes;
    std::vector<double> positive{inner};
    while (positive.back() < outer) {
        positive.push_back(std::min(2.0 * positive.back(), outer));
    }
    g.breakpoints.push_back(0.0);
    for (double x : positive) g.breakpoints.push_back(x);
    for (double x : positive) g.breakpoints.insert(g.breakpoints.begin(), -x);
    return g;
}

QuadratureGrid QuadratureGrid::refined() const {
    QuadratureGrid g = *this;
    g.breakpoints.clear();
    g.breakpoints.reserve(2 * breakpoints.size());
    for (size_t p = 0; p + 1 < breakpoints.size(); ++p) {
        g.breakpoints.push_back(breakpoints[p]);
        g.breakpoints.push_back(0.5 * (breakpoints[p] + breakpoints[p + 1]));
    }
    g.breakpoints.push_back(breakpoints.back());
    return g;
}

}  // namespace randfeat
