#include "dcg/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "dcg/harmonic.hpp"

namespace dcg {

namespace {

double max_abs(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_at(std::span<const double> x, std::span<const int> idx) {
    double m = 0.0;
    for (int i : idx) m = std::max(m, std::abs(x[i]));
    return m;
}

// Solves J_II d = rhs for the curvature Jacobian restricted to interior
// vertices (a Dirichlet Laplacian with cotangent weights).
class InteriorSystem {
public:
    InteriorSystem(const Triangulation& tri, const EdgeWeights& w, std::span<const int> interior)
        : slot_(tri.num_vertices(), -1), n_(static_cast<int>(interior.size())) {
        for (int k = 0; k < n_; ++k) slot_[interior[k]] = k;
        std::vector<Eigen::Triplet<double>> trip;
        for (int k = 0; k < n_; ++k) {
            const int i = interior[k];
            const auto nb = tri.neighbors(i);
            const auto es = tri.vertex_edges(i);
            double diag = 0.0;
            for (std::size_t j = 0; j < nb.size(); ++j) {
                const double mu = w.mu[es[j]];
                diag += mu;
                if (slot_[nb[j]] >= 0) trip.emplace_back(k, slot_[nb[j]], -mu);
            }
            trip.emplace_back(k, k, diag);
        }
        a_.resize(n_, n_);
        a_.setFromTriplets(trip.begin(), trip.end());
        ldlt_.compute(a_);
        if (ldlt_.info() != Eigen::Success) {
            lu_.compute(a_);
            if (lu_.info() != Eigen::Success) throw Error(ErrorCode::SingularSystem, "interior Jacobian is singular");
            use_lu_ = true;
        }
    }

    Eigen::VectorXd solve(const Eigen::VectorXd& b) {
        Eigen::VectorXd x = use_lu_ ? Eigen::VectorXd(lu_.solve(b)) : Eigen::VectorXd(ldlt_.solve(b));
        const Eigen::VectorXd r = b - a_ * x;
        x += use_lu_ ? Eigen::VectorXd(lu_.solve(r)) : Eigen::VectorXd(ldlt_.solve(r));
        return x;
    }

private:
    std::vector<int> slot_;
    int n_;
    Eigen::SparseMatrix<double> a_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
    bool use_lu_ = false;
};

struct Evaluated {
    PLMetric metric;
    CornerAngles angles;
    EdgeWeights weights;
    std::vector<double> k;
};

Evaluated evaluate(const Triangulation& tri, const PLMetric& l, std::span<const double> u) {
    Evaluated e;
    e.metric = conformal_change(tri, l, u);
    e.angles = corner_angles(tri, e.metric);
    e.weights = cot_weights(tri, e.angles);
    e.k = curvature(tri, e.angles);
    return e;
}

// One Newton step on the interior curvature with the boundary held fixed.
void newton_correct(const Triangulation& tri, const Evaluated& ev, std::span<const int> interior,
                    std::vector<double>& u) {
    InteriorSystem sys(tri, ev.weights, interior);
    Eigen::VectorXd rhs(interior.size());
    for (std::size_t k = 0; k < interior.size(); ++k) rhs[k] = -ev.k[interior[k]];
    const Eigen::VectorXd d = sys.solve(rhs);
    for (std::size_t k = 0; k < interior.size(); ++k) u[interior[k]] += d[k];
}

struct FlowFailure {
    FlowTermination reason;
    ErrorCode code;
    std::string message;
};

}  // namespace

const char* to_string(FlowTermination t) {
    switch (t) {
        case FlowTermination::Completed:
            return "Completed";
        case FlowTermination::LeftDomain:
            return "LeftDomain";
        case FlowTermination::WeightDegenerate:
            return "WeightDegenerate";
        case FlowTermination::StepFailure:
            return "StepFailure";
    }
    return "Unknown";
}

FlowTrajectory conformal_flow(const Triangulation& tri, const PLMetric& l, std::span<const double> boundary_velocity,
                              double t_end, double delta, const FlowOptions& opts) {
    const int n = tri.num_vertices();
    if (static_cast<int>(boundary_velocity.size()) != n)
        throw Error(ErrorCode::InvalidArgument, "boundary velocity must be indexed over all vertices");
    if (!(t_end > 0) || !(delta > 0) || !(t_end < 2 * delta))
        throw Error(ErrorCode::InvalidArgument, "need 0 < t_end < 2 delta");
    const std::vector<int> interior = tri.interior_vertices();
    const std::vector<int> boundary = tri.boundary_vertices();
    if (max_abs_at(boundary_velocity, boundary) > 1.0)
        throw Error(ErrorCode::InvalidArgument, "boundary velocity exceeds 1 in absolute value");
    {
        const Evaluated ev0 = evaluate(tri, l, std::vector<double>(n, 0.0));
        if (max_abs_at(ev0.k, interior) > 1e-8) throw Error(ErrorCode::NotFlat, "initial metric is not flat inside");
        if (!delaunay_check(tri, l, opts.delaunay_slack).is_delaunay())
            throw Error(ErrorCode::InvalidArgument, "initial metric is not Delaunay");
    }

    FlowTrajectory traj;
    traj.boundary_velocity.assign(n, 0.0);
    for (int b : boundary) traj.boundary_velocity[b] = boundary_velocity[b];
    const int steps = opts.step > 0 ? static_cast<int>(std::ceil(t_end / opts.step - 1e-9))
                                    : static_cast<int>(std::ceil(t_end / 0.01 - 1e-9));
    const double h = t_end / steps;
    traj.step = h;
    const double vmax = max_abs(traj.boundary_velocity);

    DirichletOptions dopt;
    dopt.require_positive = false;

    // u' = F(u): harmonic extension of the boundary velocity for mu(u).
    auto velocity = [&](std::span<const double> u, Evaluated* out) {
        Evaluated ev;
        try {
            ev = evaluate(tri, l, u);
        } catch (const TriangleInequalityError& e) {
            throw FlowFailure{FlowTermination::StepFailure, ErrorCode::StepFailure, e.what()};
        }
        const auto g = WeightedGraph::from_triangulation(tri, ev.weights);
        std::vector<double> v;
        try {
            v = dirichlet_solve(g, interior, traj.boundary_velocity, dopt);
        } catch (const Error& e) {
            throw FlowFailure{FlowTermination::StepFailure, ErrorCode::StepFailure, e.what()};
        }
        if (out) *out = std::move(ev);
        return v;
    };

    auto record = [&](double t, std::vector<double> u) {
        FlowState s;
        Evaluated ev;
        s.velocity = velocity(u, &ev);
        s.time = t;
        s.u = std::move(u);
        s.metric = std::move(ev.metric);
        s.weights = std::move(ev.weights);
        s.flatness = max_abs_at(ev.k, interior);
        s.interior_speed = max_abs_at(s.velocity, interior);
        s.boundary_speed = vmax;
        traj.states.push_back(std::move(s));
    };

    try {
        std::vector<double> u(n, 0.0);
        record(0.0, u);
        for (int step = 1; step <= steps; ++step) {
            const std::vector<double>& k1 = traj.states.back().velocity;
            std::vector<double> tmp(n);
            auto axpy = [&](const std::vector<double>& k, double a) {
                for (int i = 0; i < n; ++i) tmp[i] = u[i] + a * k[i];
                return tmp;
            };
            const auto k2 = velocity(axpy(k1, 0.5 * h), nullptr);
            const auto k3 = velocity(axpy(k2, 0.5 * h), nullptr);
            const auto k4 = velocity(axpy(k3, h), nullptr);
            for (int i = 0; i < n; ++i) u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

            if (opts.project) {
                for (int it = 0; it < 3; ++it) {
                    Evaluated ev;
                    try {
                        ev = evaluate(tri, l, u);
                    } catch (const TriangleInequalityError& e) {
                        throw FlowFailure{FlowTermination::StepFailure, ErrorCode::StepFailure, e.what()};
                    }
                    if (max_abs_at(ev.k, interior) <= 1e-13) break;
                    newton_correct(tri, ev, interior, u);
                }
            }
            const double t = step == steps ? t_end : step * h;
            if (max_abs(u) >= 2 * delta)
                throw FlowFailure{FlowTermination::LeftDomain, ErrorCode::LeftDomain,
                                  "|u| reached 2 delta at t = " + std::to_string(t)};
            record(t, u);
            const auto dc = delaunay_check(tri, traj.states.back().metric, opts.delaunay_slack);
            if (!dc.is_delaunay())
                throw FlowFailure{FlowTermination::WeightDegenerate, ErrorCode::WeightDegenerate,
                                  "Delaunay lost at edge " + std::to_string(dc.witness_edge) + ", t = " +
                                      std::to_string(t)};
        }
    } catch (const FlowFailure& f) {
        if (opts.throw_on_failure) throw Error(f.code, f.message);
        traj.termination = f.reason;
        traj.message = f.message;
    }
    return traj;
}

YamabeResult yamabe_solve(const Triangulation& tri, const PLMetric& l, std::span<const double> boundary_u,
                          const YamabeOptions& opts) {
    const int n = tri.num_vertices();
    if (static_cast<int>(boundary_u.size()) != n)
        throw Error(ErrorCode::InvalidArgument, "boundary data must be indexed over all vertices");
    if (!delaunay_check(tri, l).is_delaunay()) throw Error(ErrorCode::InvalidArgument, "metric is not Delaunay");
    const std::vector<int> interior = tri.interior_vertices();

    std::vector<double> u(boundary_u.begin(), boundary_u.end());
    for (int i : interior) u[i] = 0.0;
    // Start from the harmonic extension for the initial weights, the
    // linearization of K = 0 around u = 0.
    {
        const auto g = WeightedGraph::from_triangulation(tri, cot_weights(tri, l));
        DirichletOptions dopt;
        dopt.require_positive = false;
        auto guess = dirichlet_solve(g, interior, u, dopt);
        try {
            conformal_change(tri, l, guess);
            u = std::move(guess);
        } catch (const TriangleInequalityError&) {
        }
    }

    Evaluated ev;
    try {
        ev = evaluate(tri, l, u);
    } catch (const TriangleInequalityError& e) {
        throw Error(ErrorCode::TriangleCollapse, std::string("boundary data collapses a triangle: ") + e.what());
    }

    YamabeResult res;
    res.u = u;
    res.residual = max_abs_at(ev.k, interior);
    res.history.push_back(res.residual);
    while (res.residual > opts.tol) {
        if (res.iterations >= opts.max_iterations)
            throw NoConvergenceError(res, "no convergence after " + std::to_string(res.iterations) +
                                              " iterations, residual " + std::to_string(res.residual));
        InteriorSystem sys(tri, ev.weights, interior);
        Eigen::VectorXd rhs(interior.size());
        for (std::size_t k = 0; k < interior.size(); ++k) rhs[k] = -ev.k[interior[k]];
        const Eigen::VectorXd d = sys.solve(rhs);

        bool accepted = false, any_valid = false;
        for (double alpha = 1.0; alpha >= 1e-10; alpha *= 0.5) {
            std::vector<double> trial = res.u;
            for (std::size_t k = 0; k < interior.size(); ++k) trial[interior[k]] += alpha * d[k];
            Evaluated cand;
            try {
                cand = evaluate(tri, l, trial);
            } catch (const TriangleInequalityError&) {
                continue;
            }
            any_valid = true;
            const double r = max_abs_at(cand.k, interior);
            if (r < res.residual) {
                res.u = std::move(trial);
                res.residual = r;
                ev = std::move(cand);
                accepted = true;
                break;
            }
        }
        ++res.iterations;
        res.history.push_back(res.residual);
        if (!accepted) {
            if (!any_valid)
                throw Error(ErrorCode::TriangleCollapse,
                            "every Newton step collapses a triangle at iteration " + std::to_string(res.iterations));
            throw NoConvergenceError(res, "line search stalled at residual " + std::to_string(res.residual));
        }
    }
    res.converged = true;
    return res;
}

BoundaryProfile parse_profile(const std::string& name) {
    if (name == "zero") return BoundaryProfile::Zero;
    if (name == "constant") return BoundaryProfile::Constant;
    if (name == "dipole") return BoundaryProfile::Dipole;
    throw Error(ErrorCode::InvalidArgument, "unknown profile '" + name + "' (zero, constant, dipole)");
}

const char* to_string(BoundaryProfile p) {
    switch (p) {
        case BoundaryProfile::Zero:
            return "zero";
        case BoundaryProfile::Constant:
            return "constant";
        case BoundaryProfile::Dipole:
            return "dipole";
    }
    return "unknown";
}

std::vector<double> profile_values(const Mesh& m, BoundaryProfile p, double amplitude) {
    std::vector<double> f(m.tri.num_vertices(), 0.0);
    for (int v : m.tri.boundary_vertices()) {
        switch (p) {
            case BoundaryProfile::Zero:
                break;
            case BoundaryProfile::Constant:
                f[v] = amplitude;
                break;
            case BoundaryProfile::Dipole:
                f[v] = amplitude * std::cos(std::arg(m.pos[v]));
                break;
        }
    }
    return f;
}

RigidityReport rigidity_experiment(std::span<const int> radii, BoundaryProfile profile, double amplitude) {
    if (!(std::abs(amplitude) <= 0.2)) throw Error(ErrorCode::InvalidArgument, "profile amplitude must be at most 0.2");
    RigidityReport rep;
    rep.profile = profile;
    rep.amplitude = amplitude;
    for (int r : radii) {
        if (r < 1) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
        const Mesh m = gen_hex_patch(r);
        const auto l = metric_from_embedding(m.tri, m.pos);
        const auto res = yamabe_solve(m.tri, l, profile_values(m, profile, amplitude));
        const auto ring = hex_ring_index(r);
        RigidityRow row;
        row.radius = r;
        row.residual = res.residual;
        row.iterations = res.iterations;
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        double clo = lo, chi = hi;
        for (int v = 0; v < m.tri.num_vertices(); ++v) {
            if (ring[v] <= 1) {
                clo = std::min(clo, res.u[v]);
                chi = std::max(chi, res.u[v]);
            }
            if (2 * ring[v] > r) continue;
            lo = std::min(lo, res.u[v]);
            hi = std::max(hi, res.u[v]);
            ++row.vertices;
        }
        row.oscillation = hi - lo;
        row.core_oscillation = chi - clo;
        if (!rep.rows.empty() && !(row.oscillation < rep.rows.back().oscillation)) rep.strictly_decreasing = false;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace dcg
