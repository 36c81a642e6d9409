#include "dcg/qp.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseCholesky>

#include "dcg/error.hpp"

namespace dcg {

namespace {

using Vec = Eigen::VectorXd;

constexpr double kPrimalReg = 1e-10;
constexpr double kDualReg = 1e-12;

double inf_norm(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Largest alpha in (0, 1] with v + alpha dv >= 0.
double max_step(const Vec& v, const Vec& dv) {
    double a = 1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (dv[i] < 0) a = std::min(a, -v[i] / dv[i]);
    return a;
}

}  // namespace

QPResult solve_qp(const SeparableQP& qp, const QPOptions& opts) {
    const auto n = static_cast<Eigen::Index>(qp.q.size());
    const auto m = static_cast<Eigen::Index>(qp.b.size());
    if (static_cast<Eigen::Index>(qp.c.size()) != n || qp.a.rows() != m || qp.a.cols() != n)
        throw Error(ErrorCode::InvalidArgument, "QP dimensions disagree");

    const Eigen::SparseMatrix<double> at = qp.a.transpose();
    const Vec q = Eigen::Map<const Vec>(qp.q.data(), n);
    const Vec c = Eigen::Map<const Vec>(qp.c.data(), n);
    const Vec b = Eigen::Map<const Vec>(qp.b.data(), m);

    Vec x = Vec::Zero(n);
    Vec s = (b - qp.a * x).cwiseAbs().cwiseMax(1.0);
    Vec lam = Vec::Ones(m);

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    Eigen::SparseMatrix<double> kkt;
    QPResult res;
    const double bnorm = 1.0 + inf_norm(b);
    const double cnorm = 1.0 + inf_norm(c);

    for (int it = 0;; ++it) {
        const Vec rd = q.cwiseProduct(x) + c + at * lam;
        const Vec rp = qp.a * x + s - b;
        const double comp = s.dot(lam);
        const double obj = 0.5 * x.dot(q.cwiseProduct(x)) + c.dot(x);
        res.iterations = it;
        res.primal_residual = inf_norm(rp);
        res.dual_residual = inf_norm(rd);
        res.gap = comp;
        if (res.primal_residual <= opts.tol * bnorm && res.dual_residual <= opts.tol * cnorm &&
            comp <= opts.tol * (1.0 + std::abs(obj))) {
            res.converged = true;
            break;
        }
        if (it >= opts.max_iterations) break;

        const double mu = comp / static_cast<double>(m);
        // Regularized quasi-definite augmented system
        //   [ Q + rho   A^T    ] [dx]   [r1]
        //   [ A        -S/Lam  ] [dl] = [r2]
        // which stays factorizable as slacks and multipliers separate.
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(static_cast<std::size_t>(n + m + 2 * qp.a.nonZeros()));
        for (Eigen::Index j = 0; j < n; ++j) trip.emplace_back(j, j, q[j] + kPrimalReg);
        for (Eigen::Index k = 0; k < qp.a.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator itr(qp.a, k); itr; ++itr) {
                trip.emplace_back(n + itr.row(), itr.col(), itr.value());
                trip.emplace_back(itr.col(), n + itr.row(), itr.value());
            }
        for (Eigen::Index i = 0; i < m; ++i) trip.emplace_back(n + i, n + i, -(s[i] / lam[i] + kDualReg));
        kkt.resize(n + m, n + m);
        kkt.setFromTriplets(trip.begin(), trip.end());
        ldlt.compute(kkt);
        if (ldlt.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "QP Newton system not factorizable");

        auto direction = [&](const Vec& rc, Vec& dx, Vec& ds, Vec& dl) {
            Vec rhs(n + m);
            rhs.head(n) = -rd;
            rhs.tail(m) = -rp + rc.cwiseQuotient(lam);
            Vec sol = ldlt.solve(rhs);
            sol += ldlt.solve(rhs - kkt * sol);
            dx = sol.head(n);
            dl = sol.tail(m);
            ds = (-rc - s.cwiseProduct(dl)).cwiseQuotient(lam);
        };

        Vec dx, ds, dl;
        direction(s.cwiseProduct(lam), dx, ds, dl);
        const double a_aff = std::min(max_step(s, ds), max_step(lam, dl));
        const double mu_aff = (s + a_aff * ds).dot(lam + a_aff * dl) / static_cast<double>(m);
        const double sigma = std::pow(mu_aff / mu, 3);
        const Vec rc = s.cwiseProduct(lam) + ds.cwiseProduct(dl) - Vec::Constant(m, sigma * mu);
        direction(rc, dx, ds, dl);
        const double a = std::min(1.0, 0.995 * std::min(max_step(s, ds), max_step(lam, dl)));
        x += a * dx;
        s += a * ds;
        lam += a * dl;
    }

    res.x.assign(x.data(), x.data() + n);
    res.lambda.assign(lam.data(), lam.data() + m);
    res.slack.assign(s.data(), s.data() + m);
    res.objective = 0.5 * x.dot(q.cwiseProduct(x)) + c.dot(x);
    return res;
}

}  // namespace dcg
