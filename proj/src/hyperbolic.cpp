#include "dcg/hyperbolic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dcg/error.hpp"
#include "dcg/predicates.hpp"

namespace dcg {

namespace {

constexpr double kPi = std::numbers::pi;

void require_inside(Point z, const std::string& what) {
    if (!(std::norm(z) < 1.0)) throw Error(ErrorCode::OutsideDisk, what + " is not inside the unit disk");
}

double sinh_half(Point z1, Point z2) {
    return std::abs(z1 - z2) / std::sqrt((1.0 - std::norm(z1)) * (1.0 - std::norm(z2)));
}

void check_lengths(const Triangulation& tri, const PHMetric& lh) {
    if (static_cast<int>(lh.length.size()) != tri.num_edges())
        throw Error(ErrorCode::InvalidArgument, "PH metric has the wrong number of lengths");
}

}  // namespace

void check_in_disk(const Triangulation& tri, const DiskEmbedding& phi) {
    if (static_cast<int>(phi.size()) < tri.num_vertices())
        throw Error(ErrorCode::InvalidArgument, "embedding smaller than the vertex set");
    for (int v = 0; v < tri.num_vertices(); ++v)
        if (tri.is_used(v)) require_inside(phi[v], "vertex " + std::to_string(v));
}

double hyp_distance(Point z1, Point z2) {
    require_inside(z1, "z1");
    require_inside(z2, "z2");
    return 2.0 * std::asinh(sinh_half(z1, z2));
}

Point mobius_to_origin(Point a, Point z) { return (z - a) / (1.0 - std::conj(a) * z); }

PHMetric ph_from_disk_embedding(const Triangulation& tri, const DiskEmbedding& phi) {
    check_in_disk(tri, phi);
    for (int f = 0; f < tri.num_faces(); ++f) {
        const Face& fc = tri.face(f);
        const Point a = phi[fc[0]], b = phi[fc[1]], c = phi[fc[2]];
        // Geodesics through 0 are diameters, so after moving a to the origin
        // the sign of the corner at a is a Euclidean orientation.
        const bool euclid_ok = orient2d(a, b, c) > 0;
        const bool hyp_ok = orient2d(Point(0, 0), mobius_to_origin(a, b), mobius_to_origin(a, c)) > 0;
        if (!euclid_ok || !hyp_ok)
            throw Error(ErrorCode::DegenerateFace, "face " + std::to_string(f) + " is degenerate or reversed");
    }
    PHMetric lh;
    lh.length.resize(tri.num_edges());
    for (int e = 0; e < tri.num_edges(); ++e) {
        const Edge& ed = tri.edge(e);
        lh.length[e] = 2.0 * std::asinh(sinh_half(phi[ed.a], phi[ed.b]));
    }
    return lh;
}

bool ph_triangle_inequality(const Triangulation& tri, const PHMetric& lh) {
    check_lengths(tri, lh);
    for (int f = 0; f < tri.num_faces(); ++f) {
        const double a = lh.length[tri.face_edge(f, 0)];
        const double b = lh.length[tri.face_edge(f, 1)];
        const double c = lh.length[tri.face_edge(f, 2)];
        if (!(a > 0 && b > 0 && c > 0 && a < b + c && b < a + c && c < a + b)) return false;
    }
    return true;
}

HypConformality hyp_conformality_check(const Triangulation& tri, const PHMetric& lh, const PHMetric& lh2,
                                       double tol) {
    check_lengths(tri, lh);
    check_lengths(tri, lh2);
    std::vector<double> rhs(tri.num_edges());
    for (int e = 0; e < tri.num_edges(); ++e)
        rhs[e] = 2.0 * (std::log(std::sinh(0.5 * lh2.length[e])) - std::log(std::sinh(0.5 * lh.length[e])));
    VertexFit fit = fit_edge_sums(tri, rhs);
    HypConformality out;
    // Residual of ln sinh(l2/2) - ln sinh(l/2) - (u_i + u_j)/2.
    out.residual = 0.5 * fit.residual;
    if (out.residual <= tol) out.u = std::move(fit.u);
    return out;
}

ConformalFactor convert_factor_euclidean_to_hyperbolic(std::span<const double> u, const DiskEmbedding& phi,
                                                       const DiskEmbedding& phi2) {
    if (u.size() > phi.size() || u.size() > phi2.size())
        throw Error(ErrorCode::InvalidArgument, "embedding smaller than the factor");
    ConformalFactor uh(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        require_inside(phi[i], "vertex " + std::to_string(i));
        require_inside(phi2[i], "vertex " + std::to_string(i));
        uh[i] = u[i] + std::log((1.0 - std::norm(phi[i])) / (1.0 - std::norm(phi2[i])));
    }
    return uh;
}

ConformalFactor convert_factor_hyperbolic_to_euclidean(std::span<const double> uh, const DiskEmbedding& phi,
                                                       const DiskEmbedding& phi2) {
    if (uh.size() > phi.size() || uh.size() > phi2.size())
        throw Error(ErrorCode::InvalidArgument, "embedding smaller than the factor");
    ConformalFactor u(uh.size());
    for (std::size_t i = 0; i < uh.size(); ++i) {
        require_inside(phi[i], "vertex " + std::to_string(i));
        require_inside(phi2[i], "vertex " + std::to_string(i));
        u[i] = uh[i] - std::log((1.0 - std::norm(phi[i])) / (1.0 - std::norm(phi2[i])));
    }
    return u;
}

Point hyp_log(Point z0, Point z) {
    require_inside(z0, "z0");
    require_inside(z, "z");
    // The automorphism sending z0 to 0 has positive real derivative there,
    // so it preserves tangent directions at z0.
    const Point w = mobius_to_origin(z0, z);
    const double r = std::abs(w);
    if (r == 0.0) return Point(0, 0);
    const double d = 2.0 * std::atanh(r);
    return w / r * (0.5 * d * (1.0 - std::norm(z0)));
}

InducedEmbedding induced_hyp_embedding(const Triangulation& tri, const DiskEmbedding& phi, int center,
                                       double epsilon) {
    if (center < 0 || center >= tri.num_vertices())
        throw Error(ErrorCode::InvalidArgument, "center out of range");
    if (!(epsilon > 0 && epsilon <= kPi / 3)) throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, pi/3]");
    const OneRing ring = one_ring(tri, center);
    if (!ring.disk) throw Error(ErrorCode::InvalidArgument, "vertex " + std::to_string(center) + " is not interior");

    const Point z0 = phi[center];
    require_inside(z0, "center");

    // Corner angles of the Euclidean star must be at least epsilon.
    for (int f : ring.faces) {
        const Face& fc = tri.face(f);
        for (int k = 0; k < 3; ++k) {
            const Point p = phi[fc[k]], q = phi[fc[(k + 1) % 3]], r = phi[fc[(k + 2) % 3]];
            const double ang = std::abs(std::arg((q - p) / (r - p)));
            if (!(ang >= epsilon))
                throw Error(ErrorCode::InvalidArgument,
                            "corner angle " + std::to_string(ang) + " below epsilon in face " + std::to_string(f));
        }
    }

    InducedEmbedding out;
    out.neighbors = ring.neighbors;
    const double bound = (1.0 - std::norm(z0)) * std::sin(epsilon);
    for (int v : ring.neighbors)
        if (std::abs(phi[v] - z0) > bound) out.violating_spokes.push_back(v);
    if (!out.violating_spokes.empty()) {
        out.status = InducedStatus::ConditionViolated;
        return out;
    }
    for (int v : ring.neighbors) require_inside(phi[v], "vertex " + std::to_string(v));

    const std::size_t k = ring.neighbors.size();
    std::vector<Point> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = hyp_log(z0, phi[ring.neighbors[i]]);
    out.turns.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double t = std::arg(v[(i + 1) % k] / v[i]);
        if (!(t > 0 && t < kPi))
            throw Error(ErrorCode::NumericalFailure,
                        "turn " + std::to_string(i) + " at vertex " + std::to_string(center) + " is " +
                            std::to_string(t) + ", outside (0, pi)");
        out.turns[i] = t;
        out.turn_sum += t;
    }
    if (std::abs(out.turn_sum - 2 * kPi) > 1e-8)
        throw Error(ErrorCode::NumericalFailure, "turn sum " + std::to_string(out.turn_sum) + " differs from 2 pi");
    return out;
}

HypDelaunayResult hyp_delaunay_check(const Triangulation& tri, const DiskEmbedding& phi) {
    check_in_disk(tri, phi);
    HypDelaunayResult out;
    for (int e = 0; e < tri.num_edges(); ++e) {
        const auto& ef = tri.edge_faces(e);
        if (ef[1] < 0) continue;
        const Face& fc = tri.face(ef[0]);
        const int d = tri.opposite_vertex(ef[1], e);
        if (incircle(phi[fc[0]], phi[fc[1]], phi[fc[2]], phi[d]) > 0) {
            out.delaunay = false;
            out.witness_edge = e;
            return out;
        }
    }
    return out;
}

}  // namespace dcg
