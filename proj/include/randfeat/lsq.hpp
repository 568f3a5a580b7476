#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "randfeat/features.hpp"
#include "randfeat/multi_index.hpp"
#include "randfeat/op_count.hpp"

namespace randfeat {

/// The stacked weighted feature-derivative matrix of the least-squares
/// trainer. Rows are indexed (j, alpha, i) with j outermost and the output
/// coordinate i innermost; alphas follow graded-lex order. Columns are
/// indexed (l, n) with the feature map l outermost:
///   entry[(j, alpha, i), (l, n)] = c_alpha * partial_alpha g_{l,i}(theta_n)(V_j)
struct DesignMatrix {
    Eigen::MatrixXd G;
    int J = 0;
    int d = 1;
    int e = 1;
    int N = 0;
    std::vector<MultiIndex> alphas;
    Eigen::VectorXd c;  // per-alpha weights, aligned with `alphas`
    OperationCount ledger;

    Eigen::Index rows() const { return G.rows(); }
    Eigen::Index cols() const { return G.cols(); }
    int row_index(int j, int alpha_pos, int i) const {
        return (j * static_cast<int>(alphas.size()) + alpha_pos) * d + i;
    }
    int col_index(int l, int n) const { return l * N + n; }
};

/// Scalar entry evaluator for vector-valued feature maps:
/// (l, theta, u, alpha, i) -> partial_alpha g_{l,i}(theta)(u).
using EntryEvaluator = std::function<double(
    int l, const Eigen::VectorXd& theta, const Eigen::VectorXd& u,
    const MultiIndex& alpha, int i)>;

/// General assembly over an arbitrary e x d family. Two units per entry
/// (feature evaluation + weight multiply) are charged to the ledger.
DesignMatrix assemble_design_matrix(int e, int d, const Eigen::MatrixXd& params,
                                    const Eigen::MatrixXd& data,
                                    const std::vector<MultiIndex>& alphas,
                                    const Eigen::VectorXd& c,
                                    const EntryEvaluator& g);

/// Assembly for a scalar feature family (trig: e = 2, d = 1).
DesignMatrix assemble_design_matrix(const FeatureFamily& family,
                                    const Eigen::MatrixXd& params,
                                    const Eigen::MatrixXd& data,
                                    const std::vector<MultiIndex>& alphas,
                                    const Eigen::VectorXd& c);

/// Shared single-network matrix (rows J * |alphas|, cols N), entry
/// c_alpha rho^{(|alpha|)}(a_n^T V_j - b_n) a_n^alpha; the per-output blocks
/// coincide, so outputs share this matrix and get separate right-hand sides.
DesignMatrix assemble_design_matrix_nn(const Activation& rho,
                                       const Eigen::MatrixXd& weights_bias,
                                       const Eigen::MatrixXd& data,
                                       const std::vector<MultiIndex>& alphas,
                                       const Eigen::VectorXd& c);

struct SolveInfo {
    bool jitter_applied = false;
    double jitter = 0.0;
};

/// In-place lower Cholesky of the (lower triangle of) A; returns false when a
/// pivot falls to or below `pivot_floor`. Only the lower triangle of A is
/// referenced.
bool cholesky_lower_inplace(Eigen::MatrixXd& A, double pivot_floor = 0.0);
Eigen::VectorXd forward_substitute(const Eigen::MatrixXd& L, const Eigen::VectorXd& b);
Eigen::VectorXd backward_substitute(const Eigen::MatrixXd& L, const Eigen::VectorXd& y);

/// Minimize ||G y - Z||^2 by forming the normal equations, Cholesky-factoring
/// G^T G, and solving the two triangular systems. A singular factorization is
/// retried once with jitter 1e-10 tr(G^T G)/cols on the diagonal; if that
/// fails too, RankDeficient is thrown. The ledger is charged the
/// rows cols^2 / 2 + cols^3 / 6 flop model of this path, with the
/// lower-order products under `remainder`.
Eigen::VectorXd solve_normal_equations(const Eigen::MatrixXd& G, const Eigen::VectorXd& Z,
                                       OperationCount& ledger, SolveInfo* info = nullptr);

/// Multi right-hand-side variant: one factorization, one pair of triangular
/// solves per column of Z.
Eigen::MatrixXd solve_normal_equations_multi(const Eigen::MatrixXd& G,
                                             const Eigen::MatrixXd& Z,
                                             OperationCount& ledger,
                                             SolveInfo* info = nullptr);

/// Complex least squares via the equivalent stacked real system
/// [Re G, -Im G; Im G, Re G]; ledger charges follow the stacked dimensions.
Eigen::VectorXcd solve_normal_equations(const Eigen::MatrixXcd& G,
                                        const Eigen::VectorXcd& Z,
                                        OperationCount& ledger, SolveInfo* info = nullptr);

}  // namespace randfeat
