#pragma once

#include <Eigen/SparseCore>
#include <vector>

namespace dcg {

/// min 1/2 sum q_j x_j^2 + c^T x subject to A x <= b, with q >= 0.
struct SeparableQP {
    std::vector<double> q;
    std::vector<double> c;
    Eigen::SparseMatrix<double> a;
    std::vector<double> b;
};

struct QPOptions {
    double tol = 1e-12;
    int max_iterations = 200;
};

struct QPResult {
    std::vector<double> x;
    std::vector<double> lambda;
    std::vector<double> slack;
    double objective = 0.0;
    /// Complementarity s^T lambda at exit.
    double gap = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Mehrotra predictor-corrector interior-point method. Each iteration factors
/// the regularized augmented Newton system by sparse LDLT.
QPResult solve_qp(const SeparableQP& qp, const QPOptions& opts = {});

}  // namespace dcg
