#include "dcg/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/SparseCholesky>

#include "dcg/kernels.hpp"

namespace dcg {

namespace {

std::string face_label(const Triangulation& tri, int f) {
    const Face& fc = tri.face(f);
    return "face " + std::to_string(f) + " (" + std::to_string(fc[0]) + "," + std::to_string(fc[1]) + "," +
           std::to_string(fc[2]) + ")";
}

void check_sizes(const Triangulation& tri, const PLMetric& l) {
    if (static_cast<int>(l.length.size()) != tri.num_edges())
        throw Error(ErrorCode::InvalidArgument, "metric has " + std::to_string(l.length.size()) +
                                                    " lengths for " + std::to_string(tri.num_edges()) + " edges");
}

}  // namespace

const char* to_string(DelaunayClass c) {
    switch (c) {
        case DelaunayClass::UniformlyDelaunay:
            return "UniformlyDelaunay";
        case DelaunayClass::Delaunay:
            return "Delaunay";
        case DelaunayClass::NotDelaunay:
            return "NotDelaunay";
    }
    return "Unknown";
}

PLMetric metric_from_embedding(const Triangulation& tri, const PlanarEmbedding& phi) {
    if (static_cast<int>(phi.size()) < tri.num_vertices())
        throw Error(ErrorCode::InvalidArgument, "embedding smaller than the vertex set");
    PLMetric l;
    l.length.resize(tri.num_edges());
    for (int e = 0; e < tri.num_edges(); ++e) {
        const Edge& ed = tri.edge(e);
        l.length[e] = std::abs(phi[ed.a] - phi[ed.b]);
    }
    return l;
}

void check_triangle_inequality(const Triangulation& tri, const PLMetric& l) {
    check_sizes(tri, l);
    for (int f = 0; f < tri.num_faces(); ++f) {
        const double a = l.length[tri.face_edge(f, 0)];
        const double b = l.length[tri.face_edge(f, 1)];
        const double c = l.length[tri.face_edge(f, 2)];
        if (!(a > 0 && b > 0 && c > 0 && b + c > a && a + c > b && a + b > c))
            throw TriangleInequalityError(f, l, face_label(tri, f) + " violates the triangle inequality");
    }
}

CornerAngles corner_angles(const Triangulation& tri, const PLMetric& l) {
    check_sizes(tri, l);
    CornerAngles out;
    out.angle.resize(3 * static_cast<std::size_t>(tri.num_faces()));
    const int bad = kernels::parallel::corner_angles(tri, l.length, out.angle);
    if (bad >= 0) throw TriangleInequalityError(bad, l, face_label(tri, bad) + " violates the triangle inequality");
    return out;
}

Corner min_corner(const Triangulation& tri, const CornerAngles& angles) {
    Corner best;
    best.angle = std::numeric_limits<double>::infinity();
    for (int f = 0; f < tri.num_faces(); ++f)
        for (int k = 0; k < 3; ++k)
            if (angles.at(f, k) < best.angle) best = {f, tri.face(f)[k], angles.at(f, k)};
    return best;
}

NondegeneracyResult validate_nondegeneracy(const Triangulation& tri, const PLMetric& l, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= std::numbers::pi / 3.0))
        throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, pi/3]");
    NondegeneracyResult r;
    r.witness = min_corner(tri, corner_angles(tri, l));
    r.ok = r.witness.angle >= epsilon;
    return r;
}

DelaunayResult delaunay_check(const Triangulation& tri, const PLMetric& l, double slack) {
    const CornerAngles angles = corner_angles(tri, l);
    DelaunayResult r;
    r.max_angle_sum = 0.0;
    for (int e = 0; e < tri.num_edges(); ++e) {
        if (tri.is_boundary_edge(e)) continue;
        double sum = 0.0;
        for (int f : tri.edge_faces(e))
            for (int k = 0; k < 3; ++k)
                if (tri.face_edge(f, k) == e) sum += angles.at(f, k);
        if (r.witness_edge < 0 || sum > r.max_angle_sum) {
            r.max_angle_sum = sum;
            r.witness_edge = e;
        }
    }
    // With no interior edge every condition holds vacuously.
    r.epsilon_star = r.witness_edge < 0 ? std::numbers::pi : std::numbers::pi - r.max_angle_sum;
    if (r.epsilon_star < -slack)
        r.cls = DelaunayClass::NotDelaunay;
    else if (r.epsilon_star > slack)
        r.cls = DelaunayClass::UniformlyDelaunay;
    else
        r.cls = DelaunayClass::Delaunay;
    return r;
}

PLMetric conformal_change(const Triangulation& tri, const PLMetric& l, std::span<const double> u) {
    check_sizes(tri, l);
    if (static_cast<int>(u.size()) < tri.num_vertices())
        throw Error(ErrorCode::InvalidArgument, "conformal factor smaller than the vertex set");
    PLMetric out;
    out.length.resize(l.length.size());
    for (int e = 0; e < tri.num_edges(); ++e) {
        const Edge& ed = tri.edge(e);
        out.length[e] = std::exp(0.5 * (u[ed.a] + u[ed.b])) * l.length[e];
    }
    check_triangle_inequality(tri, out);
    return out;
}

std::vector<double> curvature(const Triangulation& tri, const CornerAngles& angles) {
    std::vector<double> k(tri.num_vertices());
    kernels::parallel::curvature(tri, angles.angle, k);
    return k;
}

std::vector<double> curvature(const Triangulation& tri, const PLMetric& l) {
    return curvature(tri, corner_angles(tri, l));
}

double max_interior_curvature(const Triangulation& tri, std::span<const double> k) {
    double m = 0.0;
    for (int v = 0; v < tri.num_vertices(); ++v)
        if (tri.is_interior(v)) m = std::max(m, std::abs(k[v]));
    return m;
}

EdgeWeights cot_weights(const Triangulation& tri, const CornerAngles& angles) {
    EdgeWeights w;
    w.mu.resize(tri.num_edges());
    kernels::parallel::cot_weights(tri, angles.angle, w.mu);
    return w;
}

EdgeWeights cot_weights(const Triangulation& tri, const PLMetric& l) { return cot_weights(tri, corner_angles(tri, l)); }

VertexFit fit_edge_sums(const Triangulation& tri, std::span<const double> rhs) {
    if (static_cast<int>(rhs.size()) != tri.num_edges()) throw Error(ErrorCode::InvalidArgument, "one value per edge");
    const int n = tri.num_vertices();
    // Normal equations of the unsigned incidence matrix: the signless
    // Laplacian, nonsingular on any complex containing a triangle.
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    for (int e = 0; e < tri.num_edges(); ++e) {
        const Edge& ed = tri.edge(e);
        trip.emplace_back(ed.a, ed.a, 1.0);
        trip.emplace_back(ed.b, ed.b, 1.0);
        trip.emplace_back(ed.a, ed.b, 1.0);
        trip.emplace_back(ed.b, ed.a, 1.0);
        b[ed.a] += rhs[e];
        b[ed.b] += rhs[e];
    }
    for (int v = 0; v < n; ++v)
        if (!tri.is_used(v)) trip.emplace_back(v, v, 1.0);
    Eigen::SparseMatrix<double> a(n, n);
    a.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(a);
    if (ldlt.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "edge-sum system is singular");
    Eigen::VectorXd x = ldlt.solve(b);
    for (int pass = 0; pass < 2; ++pass) x += ldlt.solve(b - a * x);

    VertexFit fit;
    fit.u.assign(x.data(), x.data() + n);
    for (int e = 0; e < tri.num_edges(); ++e) {
        const Edge& ed = tri.edge(e);
        fit.residual = std::max(fit.residual, std::abs(fit.u[ed.a] + fit.u[ed.b] - rhs[e]));
    }
    return fit;
}

Eigen::SparseMatrix<double> curvature_jacobian(const Triangulation& tri, const PLMetric& l, std::span<const double> u) {
    const EdgeWeights w = cot_weights(tri, conformal_change(tri, l, u));
    const int n = tri.num_vertices();
    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < n; ++i) {
        if (!tri.is_interior(i)) continue;
        double diag = 0.0;
        const auto nb = tri.neighbors(i);
        const auto es = tri.vertex_edges(i);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            trip.emplace_back(i, nb[k], -w.mu[es[k]]);
            diag += w.mu[es[k]];
        }
        trip.emplace_back(i, i, diag);
    }
    Eigen::SparseMatrix<double> jac(n, n);
    jac.setFromTriplets(trip.begin(), trip.end());
    return jac;
}

}  // namespace dcg
