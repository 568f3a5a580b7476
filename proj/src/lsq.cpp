#include "randfeat/lsq.hpp"

#include <cassert>
#include <cmath>

#include "randfeat/errors.hpp"
#include "randfeat/op_count.hpp"

namespace randfeat {

OperationBudget operation_budget(std::int64_t J, std::int64_t N, int m, int k, int d, int e) {
    const double S = static_cast<double>(multi_index_count(m, k));
    const double Jd = static_cast<double>(J);
    const double Nd = static_cast<double>(N);
    const double cols = e * Nd;
    OperationBudget b;
    b.rng = Nd + Jd;
    b.assembly = 2.0 * Jd * S * d * e * Nd;
    b.rhs = 2.0 * Jd * S * d;
    b.solve = 0.5 * (Jd * S * d) * cols * cols + cols * cols * cols / 6.0;
    return b;
}

DesignMatrix assemble_design_matrix(int e, int d, const Eigen::MatrixXd& params,
                                    const Eigen::MatrixXd& data,
                                    const std::vector<MultiIndex>& alphas,
                                    const Eigen::VectorXd& c, const EntryEvaluator& g) {
    assert(static_cast<size_t>(c.size()) == alphas.size());
    DesignMatrix dm;
    dm.J = static_cast<int>(data.cols());
    dm.d = d;
    dm.e = e;
    dm.N = static_cast<int>(params.cols());
    dm.alphas = alphas;
    dm.c = c;
    const int A = static_cast<int>(alphas.size());
    dm.G.resize(static_cast<Eigen::Index>(dm.J) * A * d,
                static_cast<Eigen::Index>(e) * dm.N);
    std::int64_t entries = 0;
    for (int j = 0; j < dm.J; ++j) {
        const Eigen::VectorXd u = data.col(j);
        for (int a = 0; a < A; ++a) {
            const double ca = c[a];
            for (int i = 0; i < d; ++i) {
                const int row = dm.row_index(j, a, i);
                for (int l = 0; l < e; ++l) {
                    for (int n = 0; n < dm.N; ++n) {
                        dm.G(row, dm.col_index(l, n)) = ca * g(l, params.col(n), u, alphas[a], i);
                        ++entries;
                    }
                }
            }
        }
    }
    dm.ledger.assembly += 2.0 * static_cast<double>(entries);
    return dm;
}

DesignMatrix assemble_design_matrix(const FeatureFamily& family,
                                    const Eigen::MatrixXd& params,
                                    const Eigen::MatrixXd& data,
                                    const std::vector<MultiIndex>& alphas,
                                    const Eigen::VectorXd& c) {
    assert(params.rows() == family.param_dim());
    return assemble_design_matrix(
        family.count(), 1, params, data, alphas, c,
        [&family](int l, const Eigen::VectorXd& theta, const Eigen::VectorXd& u,
                  const MultiIndex& alpha, int) { return family.eval(l, theta, u, alpha); });
}

DesignMatrix assemble_design_matrix_nn(const Activation& rho,
                                       const Eigen::MatrixXd& weights_bias,
                                       const Eigen::MatrixXd& data,
                                       const std::vector<MultiIndex>& alphas,
                                       const Eigen::VectorXd& c) {
    const int m = static_cast<int>(data.rows());
    assert(weights_bias.rows() == m + 1);
    DesignMatrix dm;
    dm.J = static_cast<int>(data.cols());
    dm.d = 1;
    dm.e = 1;
    dm.N = static_cast<int>(weights_bias.cols());
    dm.alphas = alphas;
    dm.c = c;
    const int A = static_cast<int>(alphas.size());
    dm.G.resize(static_cast<Eigen::Index>(dm.J) * A, dm.N);
    // pre-activations a_n^T V_j - b_n for all (j, n) in one product
    Eigen::MatrixXd pre = data.transpose() * weights_bias.topRows(m);
    pre.rowwise() -= weights_bias.row(m);
    for (int n = 0; n < dm.N; ++n) {
        const Eigen::VectorXd a = weights_bias.col(n).head(m);
        for (int ai = 0; ai < A; ++ai) {
            const double ca_mono = dm.c[ai] * monomial(a, dm.alphas[ai]);
            const int order = dm.alphas[ai].order();
            for (int j = 0; j < dm.J; ++j) {
                dm.G(j * A + ai, n) = ca_mono * rho.derivative(order, pre(j, n));
            }
        }
    }
    dm.ledger.assembly += 2.0 * static_cast<double>(dm.G.rows()) * dm.N;
    return dm;
}

bool cholesky_lower_inplace(Eigen::MatrixXd& A, double pivot_floor) {
    // left-looking column variant; only the lower triangle is referenced
    const Eigen::Index n = A.rows();
    for (Eigen::Index j = 0; j < n; ++j) {
        if (j > 0) {
            A.col(j).tail(n - j).noalias() -=
                A.block(j, 0, n - j, j) * A.row(j).head(j).transpose();
        }
        const double d = A(j, j);
        if (!(d > pivot_floor) || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        A(j, j) = ljj;
        A.col(j).tail(n - j - 1) /= ljj;
    }
    return true;
}

Eigen::VectorXd forward_substitute(const Eigen::MatrixXd& L, const Eigen::VectorXd& b) {
    const Eigen::Index n = b.size();
    Eigen::VectorXd y = b;
    for (Eigen::Index i = 0; i < n; ++i) {
        y[i] /= L(i, i);
        y.tail(n - i - 1) -= y[i] * L.col(i).tail(n - i - 1);
    }
    return y;
}

Eigen::VectorXd backward_substitute(const Eigen::MatrixXd& L, const Eigen::VectorXd& y) {
    const Eigen::Index n = y.size();
    Eigen::VectorXd x(n);
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        x[i] = (y[i] - L.col(i).tail(n - i - 1).dot(x.tail(n - i - 1))) / L(i, i);
    }
    return x;
}

namespace {

// G^T G (lower triangle), factored in place with the one-shot jitter retry.
// Pivots below 1e-13 tr/n count as failures: a numerically semidefinite
// matrix would otherwise pass with a useless near-zero pivot.
Eigen::MatrixXd factor_normal_matrix(const Eigen::MatrixXd& G, SolveInfo* info) {
    const Eigen::Index cols = G.cols();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(cols, cols);
    A.selfadjointView<Eigen::Lower>().rankUpdate(G.transpose());
    const double trace = A.diagonal().sum();
    const double pivot_floor = 1e-13 * trace / static_cast<double>(cols);
    Eigen::MatrixXd L = A;
    if (cholesky_lower_inplace(L, pivot_floor)) {
        if (info) *info = {};
        return L;
    }
    const double jitter = 1e-10 * trace / static_cast<double>(cols);
    L = A;
    L.diagonal().array() += jitter;
    if (!cholesky_lower_inplace(L, pivot_floor)) {
        throw RankDeficient("normal matrix not positive definite even with jitter " +
                            std::to_string(jitter) + " (cols=" + std::to_string(cols) +
                            ", trace=" + std::to_string(trace) + ")");
    }
    if (info) {
        info->jitter_applied = true;
        info->jitter = jitter;
    }
    return L;
}

}  // namespace

Eigen::VectorXd solve_normal_equations(const Eigen::MatrixXd& G, const Eigen::VectorXd& Z,
                                       OperationCount& ledger, SolveInfo* info) {
    if (G.rows() != Z.size()) {
        throw InvalidTarget("solve_normal_equations: G has " + std::to_string(G.rows()) +
                            " rows but Z has " + std::to_string(Z.size()) + " entries");
    }
    const double rows = static_cast<double>(G.rows());
    const double cols = static_cast<double>(G.cols());
    const Eigen::MatrixXd L = factor_normal_matrix(G, info);
    const Eigen::VectorXd rhs = G.transpose() * Z;
    ledger.solve += 0.5 * rows * cols * cols + cols * cols * cols / 6.0;
    ledger.remainder += 2.0 * rows * cols + 2.0 * cols * cols;
    return backward_substitute(L, forward_substitute(L, rhs));
}

Eigen::MatrixXd solve_normal_equations_multi(const Eigen::MatrixXd& G,
                                             const Eigen::MatrixXd& Z,
                                             OperationCount& ledger, SolveInfo* info) {
    if (G.rows() != Z.rows()) {
        throw InvalidTarget("solve_normal_equations_multi: row mismatch");
    }
    const double rows = static_cast<double>(G.rows());
    const double cols = static_cast<double>(G.cols());
    const Eigen::MatrixXd L = factor_normal_matrix(G, info);
    ledger.solve += 0.5 * rows * cols * cols + cols * cols * cols / 6.0;
    Eigen::MatrixXd Y(G.cols(), Z.cols());
    for (Eigen::Index r = 0; r < Z.cols(); ++r) {
        const Eigen::VectorXd rhs = G.transpose() * Z.col(r);
        Y.col(r) = backward_substitute(L, forward_substitute(L, rhs));
        ledger.remainder += 2.0 * rows * cols + 2.0 * cols * cols;
    }
    return Y;
}

Eigen::VectorXcd solve_normal_equations(const Eigen::MatrixXcd& G,
                                        const Eigen::VectorXcd& Z,
                                        OperationCount& ledger, SolveInfo* info) {
    const Eigen::Index mr = G.rows();
    const Eigen::Index nc = G.cols();
    Eigen::MatrixXd Gs(2 * mr, 2 * nc);
    Gs.topLeftCorner(mr, nc) = G.real();
    Gs.topRightCorner(mr, nc) = -G.imag();
    Gs.bottomLeftCorner(mr, nc) = G.imag();
    Gs.bottomRightCorner(mr, nc) = G.real();
    Eigen::VectorXd Zs(2 * mr);
    Zs.head(mr) = Z.real();
    Zs.tail(mr) = Z.imag();
    const Eigen::VectorXd ys = solve_normal_equations(Gs, Zs, ledger, info);
    Eigen::VectorXcd y(nc);
    y.real() = ys.head(nc);
    y.imag() = ys.tail(nc);
    return y;
}

}  // namespace randfeat
