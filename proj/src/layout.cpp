#include "dcg/layout.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <string>

#include "dcg/error.hpp"
#include "dcg/kernels.hpp"

namespace dcg {

namespace {

constexpr double kFlatTol = 1e-8;
constexpr double kAngleSlack = 1e-12;
constexpr double kBoundRel = 1e-12;

double segment_distance(Point p, Point a, Point b) {
    const Point d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

// Directed boundary edges of the faces selected by `keep` (all faces when empty).
std::vector<std::pair<int, int>> boundary_segments(const Triangulation& tri, const std::vector<char>& keep) {
    std::vector<std::pair<int, int>> out;
    for (int f = 0; f < tri.num_faces(); ++f) {
        if (!keep.empty() && !keep[f]) continue;
        const Face& fc = tri.face(f);
        for (int k = 0; k < 3; ++k) {
            const int e = tri.face_edge(f, k);
            const auto& ef = tri.edge_faces(e);
            const int other = ef[0] == f ? ef[1] : ef[0];
            if (other >= 0 && (keep.empty() || keep[other])) continue;
            out.emplace_back(fc[(k + 1) % 3], fc[(k + 2) % 3]);
        }
    }
    return out;
}

double boundary_distance(const std::vector<std::pair<int, int>>& segs, const PlanarEmbedding& phi, Point p) {
    double d = std::numeric_limits<double>::infinity();
    for (auto [a, b] : segs) d = std::min(d, segment_distance(p, phi[a], phi[b]));
    return d;
}

void check_sizes(const Triangulation& tri, const PlanarEmbedding& phi) {
    if (static_cast<int>(phi.size()) != tri.num_vertices())
        throw Error(ErrorCode::InvalidArgument, "embedding size does not match the complex");
}

}  // namespace

PlanarEmbedding develop_flat_metric(const Triangulation& tri, const PLMetric& l, const Anchor& anchor) {
    if (static_cast<int>(l.length.size()) != tri.num_edges())
        throw Error(ErrorCode::InvalidArgument, "metric size does not match the complex");
    if (tri.num_faces() == 0) throw Error(ErrorCode::InvalidArgument, "empty complex");
    check_triangle_inequality(tri, l);
    const CornerAngles ang = corner_angles(tri, l);
    const auto k = curvature(tri, ang);
    for (int v : tri.interior_vertices())
        if (std::abs(k[v]) > kFlatTol)
            throw Error(ErrorCode::NotFlat, "curvature " + std::to_string(k[v]) + " at vertex " + std::to_string(v));

    int from = anchor.from, to = anchor.to;
    if (from < 0 && to < 0) {
        from = tri.face(0)[0];
        to = tri.face(0)[1];
    }
    const int e0 = (from >= 0 && to >= 0 && from < tri.num_vertices() && to < tri.num_vertices())
                       ? tri.find_edge(from, to)
                       : -1;
    if (e0 < 0) throw Error(ErrorCode::InvalidArgument, "anchor is not an edge");

    PlanarEmbedding phi;
    phi.z.assign(tri.num_vertices(), Point(0.0, 0.0));
    std::vector<char> placed(tri.num_vertices(), 0), done(tri.num_faces(), 0);
    phi[from] = anchor.origin;
    phi[to] = anchor.origin + std::polar(l.length[e0], anchor.direction);
    placed[from] = placed[to] = 1;

    std::deque<int> queue;
    for (int f : tri.edge_faces(e0))
        if (f >= 0) queue.push_back(f);
    while (!queue.empty()) {
        const int f = queue.front();
        queue.pop_front();
        if (done[f]) continue;
        const Face& fc = tri.face(f);
        for (int c = 0; c < 3; ++c) {
            const int p = fc[c], q = fc[(c + 1) % 3], r = fc[(c + 2) % 3];
            if (!placed[p] || !placed[q] || placed[r]) continue;
            const Point dir = (phi[q] - phi[p]) / std::abs(phi[q] - phi[p]);
            phi[r] = phi[p] + dir * std::polar(l.length[tri.face_edge(f, (c + 1) % 3)], ang.at(f, c));
            placed[r] = 1;
            break;
        }
        if (!placed[fc[0]] || !placed[fc[1]] || !placed[fc[2]]) continue;  // reached again later
        done[f] = 1;
        for (int c = 0; c < 3; ++c)
            for (int g : tri.edge_faces(tri.face_edge(f, c)))
                if (g >= 0 && !done[g]) queue.push_back(g);
    }

    for (int f = 0; f < tri.num_faces(); ++f) {
        const Face& fc = tri.face(f);
        if (!done[f]) throw Error(ErrorCode::InvalidArgument, "complex is not face-connected");
        if (orient2d(phi[fc[0]], phi[fc[1]], phi[fc[2]]) <= 0)
            throw Error(ErrorCode::FoldOver, "face " + std::to_string(f) + " lays out with nonpositive area");
    }
    for (int e = 0; e < tri.num_edges(); ++e) {
        const Edge& ed = tri.edge(e);
        const double got = std::abs(phi[ed.a] - phi[ed.b]);
        if (std::abs(got - l.length[e]) > kFlatTol * l.length[e])
            throw Error(ErrorCode::NotFlat, "layout does not close at edge " + std::to_string(e));
    }
    return phi;
}

Dilatation pl_map_dilatation(const Triangulation& tri, const PlanarEmbedding& phi, const PlanarEmbedding& phi2) {
    check_sizes(tri, phi);
    check_sizes(tri, phi2);
    Dilatation d;
    d.per_face.resize(tri.num_faces());
    const int bad = kernels::parallel::face_dilatation(tri, phi.z, phi2.z, d.per_face);
    if (bad >= 0) throw Error(ErrorCode::DegenerateFace, "face " + std::to_string(bad) + " is degenerate or inverted");
    for (int f = 0; f < tri.num_faces(); ++f)
        if (d.worst_face < 0 || d.per_face[f] > d.max) {
            d.max = d.per_face[f];
            d.worst_face = f;
        }
    return d;
}

GeometricEstimates geometric_estimates_check(const Triangulation& tri, const PlanarEmbedding& phi, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= std::numbers::pi / 3.0))
        throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, pi/3]");
    check_sizes(tri, phi);
    const PLMetric l = metric_from_embedding(tri, phi);
    const CornerAngles ang = corner_angles(tri, l);
    const Corner c = min_corner(tri, ang);
    if (c.angle < epsilon - kAngleSlack)
        throw Error(ErrorCode::AngleHypothesisViolated,
                    "corner " + std::to_string(c.angle) + " at vertex " + std::to_string(c.vertex) + " of face " +
                        std::to_string(c.face));

    GeometricEstimates g;
    g.epsilon = epsilon;
    g.min_angle = c.angle;
    g.degree_bound = 2 * std::numbers::pi / epsilon;
    for (int v = 0; v < tri.num_vertices(); ++v)
        g.max_degree = std::max(g.max_degree, static_cast<int>(tri.vertex_faces(v).size()));
    if (g.max_degree > g.degree_bound * (1 + kBoundRel))
        throw Error(ErrorCode::TheoremViolated, "degree bound fails");

    const double s = std::sin(epsilon);
    g.min_ratio = g.min_area_ratio = std::numeric_limits<double>::infinity();
    for (int f = 0; f < tri.num_faces(); ++f) {
        const Face& fc = tri.face(f);
        const double area = 0.5 * (std::conj(phi[fc[1]] - phi[fc[0]]) * (phi[fc[2]] - phi[fc[0]])).imag();
        for (int a = 0; a < 3; ++a) {
            const double la = l.length[tri.face_edge(f, a)];
            for (int b = 0; b < 3; ++b)
                if (a != b) {
                    const double ratio = la / l.length[tri.face_edge(f, b)];
                    g.min_ratio = std::min(g.min_ratio, ratio);
                    g.max_ratio = std::max(g.max_ratio, ratio);
                }
            const double ar = area / (la * la);
            g.min_area_ratio = std::min(g.min_area_ratio, ar);
            g.max_area_ratio = std::max(g.max_area_ratio, ar);
        }
    }
    if (g.min_ratio < s * (1 - kBoundRel) || g.max_ratio > (1 + kBoundRel) / s)
        throw Error(ErrorCode::TheoremViolated, "edge ratio bound fails");
    if (g.min_area_ratio < 0.5 * s * s * (1 - kBoundRel) || g.max_area_ratio > (1 + kBoundRel) / (2 * s))
        throw Error(ErrorCode::TheoremViolated, "area bound fails");
    return g;
}

bool image_contains(const Triangulation& tri, const PlanarEmbedding& phi, Point p) {
    check_sizes(tri, phi);
    int winding = 0;
    for (auto [ia, ib] : boundary_segments(tri, {})) {
        const Point a = phi[ia], b = phi[ib];
        const int o = orient2d(a, b, p);
        if (o == 0 && segment_distance(p, a, b) == 0.0) return true;
        if (a.imag() <= p.imag()) {
            if (b.imag() > p.imag() && o > 0) ++winding;
        } else if (b.imag() <= p.imag() && o < 0) {
            --winding;
        }
    }
    return winding != 0;
}

double distance_to_boundary(const Triangulation& tri, const PlanarEmbedding& phi, Point p) {
    check_sizes(tri, phi);
    return boundary_distance(boundary_segments(tri, {}), phi, p);
}

ContainmentRadii containment_radii(const Triangulation& tri, const PlanarEmbedding& phi, int a, int num_samples) {
    check_sizes(tri, phi);
    if (a < 0 || a >= tri.num_vertices() || !tri.is_used(a)) throw Error(ErrorCode::InvalidArgument, "bad vertex");
    if (num_samples < 1) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
    const Point c = phi[a];
    ContainmentRadii out;
    out.r_inner = tri.is_interior(a) ? distance_to_boundary(tri, phi, c) : 0.0;
    for (int j : tri.neighbors(a)) out.r_outer = std::max(out.r_outer, std::abs(phi[j] - c));
    if (!(out.r_outer < out.r_inner)) return out;

    out.samples.resize(num_samples);
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < num_samples; ++s) {
        const double r = out.r_outer + (out.r_inner - out.r_outer) * (s + 1) / num_samples;
        std::vector<char> keep(tri.num_faces(), 0);
        for (int f = 0; f < tri.num_faces(); ++f) {
            const Face& fc = tri.face(f);
            keep[f] = std::abs(phi[fc[0]] - c) < r && std::abs(phi[fc[1]] - c) < r && std::abs(phi[fc[2]] - c) < r;
        }
        out.samples[s] = {r, boundary_distance(boundary_segments(tri, keep), phi, c)};
    }
    double worst = 0.0;
    for (const auto& s : out.samples) worst = std::max(worst, s.r / s.covered);
    out.c_emp = worst;
    return out;
}

VertexFit recover_conformal_factor(const Triangulation& tri, const PLMetric& l, const PLMetric& l2, double tol) {
    if (static_cast<int>(l.length.size()) != tri.num_edges() || l2.length.size() != l.length.size())
        throw Error(ErrorCode::InvalidArgument, "metric size does not match the complex");
    std::vector<double> rhs(tri.num_edges());
    for (int e = 0; e < tri.num_edges(); ++e) {
        if (!(l.length[e] > 0 && l2.length[e] > 0)) throw Error(ErrorCode::InvalidArgument, "nonpositive length");
        rhs[e] = 2 * std::log(l2.length[e] / l.length[e]);
    }
    VertexFit fit = fit_edge_sums(tri, rhs);
    if (!(fit.residual <= tol))
        throw Error(ErrorCode::NotConformalPair, "length ratios leave residual " + std::to_string(fit.residual));
    return fit;
}

SchwarzResult schwarz_verify(const Triangulation& tri, const PlanarEmbedding& phi, const PlanarEmbedding& phi2,
                             double r, double r2, double epsilon) {
    if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
    if (epsilon > std::numbers::pi / 6.0)
        throw Error(ErrorCode::HypothesisViolated, "epsilon exceeds pi/6");
    if (!(r > 0.0 && r2 > 0.0)) throw Error(ErrorCode::InvalidArgument, "radii must be positive");
    check_sizes(tri, phi);
    check_sizes(tri, phi2);

    const PLMetric l = metric_from_embedding(tri, phi);
    const PLMetric l2 = metric_from_embedding(tri, phi2);
    const char* names[] = {"phi", "phi2"};
    const PLMetric* metrics[] = {&l, &l2};
    for (int m = 0; m < 2; ++m) {
        const Corner c = min_corner(tri, corner_angles(tri, *metrics[m]));
        if (c.angle < epsilon - kAngleSlack)
            throw Error(ErrorCode::HypothesisViolated, std::string(names[m]) + ": corner at vertex " +
                                                           std::to_string(c.vertex) + " of face " +
                                                           std::to_string(c.face) + " is below epsilon");
        const DelaunayResult d = delaunay_check(tri, *metrics[m]);
        if (!d.is_delaunay())
            throw Error(ErrorCode::HypothesisViolated,
                        std::string(names[m]) + ": edge " + std::to_string(d.witness_edge) + " is not Delaunay");
    }
    for (int v : tri.used_vertices())
        if (std::abs(phi[v]) > r * (1 + kBoundRel))
            throw Error(ErrorCode::HypothesisViolated, "phi(" + std::to_string(v) + ") lies outside D_r");
    if (!image_contains(tri, phi2, Point(0.0, 0.0)) || distance_to_boundary(tri, phi2, Point(0.0, 0.0)) < r2 * (1 - kBoundRel))
        throw Error(ErrorCode::HypothesisViolated, "D_r2 is not inside phi2(|T|)");

    const VertexFit fit = recover_conformal_factor(tri, l, l2);
    SchwarzResult out;
    out.u = fit.u;
    out.fit_residual = fit.residual;
    const double s = std::sin(epsilon);
    out.m = -std::log(s * s * s / 8.0);
    out.bound = std::log(r2 / r) - out.m;
    out.margin = std::numeric_limits<double>::infinity();
    for (int v : tri.used_vertices()) {
        if (!(std::abs(phi2[v]) < r2 / 2)) continue;
        ++out.checked;
        const double margin = fit.u[v] - out.bound;
        if (margin < out.margin) {
            out.margin = margin;
            out.worst_vertex = v;
        }
    }
    if (out.margin < -fit.residual - 1e-12)
        throw Error(ErrorCode::TheoremViolated, "u(" + std::to_string(out.worst_vertex) + ") is below the bound by " +
                                                    std::to_string(-out.margin));
    return out;
}

}  // namespace dcg
