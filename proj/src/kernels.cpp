#include "dcg/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dcg/harmonic.hpp"

namespace dcg::kernels {

double angle_opposite(double a, double b, double c) {
    const double num = (a - b + c) * (a + b - c);
    const double den = (a + b + c) * (-a + b + c);
    return 2.0 * std::atan(std::sqrt(num / den));
}

double linear_dilatation(Point z1, Point z2, Point w1, Point w2) {
    const Point det = z1 * std::conj(z2) - std::conj(z1) * z2;
    if (std::abs(det) == 0.0) return std::numeric_limits<double>::infinity();
    const Point alpha = (w1 * std::conj(z2) - w2 * std::conj(z1)) / det;
    const Point beta = (z1 * w2 - z2 * w1) / det;
    const double big = std::abs(alpha) + std::abs(beta);
    const double small = std::abs(std::abs(alpha) - std::abs(beta));
    if (small == 0.0) return std::numeric_limits<double>::infinity();
    return big / small;
}

namespace {

inline bool face_angles(const Triangulation& tri, std::span<const double> len, int f, double* out) {
    const double l0 = len[tri.face_edge(f, 0)];
    const double l1 = len[tri.face_edge(f, 1)];
    const double l2 = len[tri.face_edge(f, 2)];
    if (!(l1 + l2 > l0 && l0 + l2 > l1 && l0 + l1 > l2)) return false;
    out[0] = angle_opposite(l0, l1, l2);
    out[1] = angle_opposite(l1, l2, l0);
    out[2] = angle_opposite(l2, l0, l1);
    return true;
}

inline double edge_weight(const Triangulation& tri, std::span<const double> angles, int e) {
    double mu = 0.0;
    for (int f : tri.edge_faces(e)) {
        if (f < 0) continue;
        for (int k = 0; k < 3; ++k)
            if (tri.face_edge(f, k) == e) mu += 0.5 / std::tan(angles[3 * f + k]);
    }
    return mu;
}

inline double vertex_curvature(const Triangulation& tri, std::span<const double> angles, int v) {
    if (!tri.is_used(v)) return 0.0;
    double sum = 0.0;
    for (int f : tri.vertex_faces(v)) {
        const Face& fc = tri.face(f);
        const int k = fc[0] == v ? 0 : (fc[1] == v ? 1 : 2);
        sum += angles[3 * f + k];
    }
    return (tri.is_interior(v) ? 2.0 * std::numbers::pi : std::numbers::pi) - sum;
}

inline double laplacian_row(const WeightedGraph& g, std::span<const double> u, int i) {
    double acc = 0.0;
    for (int k = g.offsets[i]; k < g.offsets[i + 1]; ++k) acc += g.mu[g.adj_edge[k]] * (u[g.adj_vertex[k]] - u[i]);
    return acc;
}

inline double face_k(const Triangulation& tri, std::span<const Point> from, std::span<const Point> to, int f,
                     bool& degenerate) {
    const Face& fc = tri.face(f);
    if (orient2d(from[fc[0]], from[fc[1]], from[fc[2]]) <= 0 || orient2d(to[fc[0]], to[fc[1]], to[fc[2]]) <= 0) {
        degenerate = true;
        return std::numeric_limits<double>::infinity();
    }
    degenerate = false;
    return linear_dilatation(from[fc[1]] - from[fc[0]], from[fc[2]] - from[fc[0]], to[fc[1]] - to[fc[0]],
                             to[fc[2]] - to[fc[0]]);
}

}  // namespace

namespace serial {

int corner_angles(const Triangulation& tri, std::span<const double> lengths, std::span<double> angles) {
    int bad = -1;
    for (int f = 0; f < tri.num_faces(); ++f)
        if (!face_angles(tri, lengths, f, &angles[3 * f]) && bad < 0) bad = f;
    return bad;
}

void cot_weights(const Triangulation& tri, std::span<const double> angles, std::span<double> mu) {
    for (int e = 0; e < tri.num_edges(); ++e) mu[e] = edge_weight(tri, angles, e);
}

void curvature(const Triangulation& tri, std::span<const double> angles, std::span<double> k) {
    for (int v = 0; v < tri.num_vertices(); ++v) k[v] = vertex_curvature(tri, angles, v);
}

void laplacian_apply(const WeightedGraph& g, std::span<const double> u, std::span<double> out) {
    for (int i = 0; i < g.num_vertices; ++i) out[i] = laplacian_row(g, u, i);
}

int face_dilatation(const Triangulation& tri, std::span<const Point> from, std::span<const Point> to,
                    std::span<double> dilatation) {
    int bad = -1;
    for (int f = 0; f < tri.num_faces(); ++f) {
        bool degenerate = false;
        dilatation[f] = face_k(tri, from, to, f, degenerate);
        if (degenerate && bad < 0) bad = f;
    }
    return bad;
}

}  // namespace serial

namespace parallel {

int corner_angles(const Triangulation& tri, std::span<const double> lengths, std::span<double> angles) {
    const int nf = tri.num_faces();
    int bad = std::numeric_limits<int>::max();
#pragma omp parallel for reduction(min : bad) schedule(static)
    for (int f = 0; f < nf; ++f)
        if (!face_angles(tri, lengths, f, &angles[3 * f])) bad = std::min(bad, f);
    return bad == std::numeric_limits<int>::max() ? -1 : bad;
}

void cot_weights(const Triangulation& tri, std::span<const double> angles, std::span<double> mu) {
    const int ne = tri.num_edges();
#pragma omp parallel for schedule(static)
    for (int e = 0; e < ne; ++e) mu[e] = edge_weight(tri, angles, e);
}

void curvature(const Triangulation& tri, std::span<const double> angles, std::span<double> k) {
    const int nv = tri.num_vertices();
#pragma omp parallel for schedule(static)
    for (int v = 0; v < nv; ++v) k[v] = vertex_curvature(tri, angles, v);
}

void laplacian_apply(const WeightedGraph& g, std::span<const double> u, std::span<double> out) {
    const int n = g.num_vertices;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) out[i] = laplacian_row(g, u, i);
}

int face_dilatation(const Triangulation& tri, std::span<const Point> from, std::span<const Point> to,
                    std::span<double> dilatation) {
    const int nf = tri.num_faces();
    int bad = std::numeric_limits<int>::max();
#pragma omp parallel for reduction(min : bad) schedule(static)
    for (int f = 0; f < nf; ++f) {
        bool degenerate = false;
        dilatation[f] = face_k(tri, from, to, f, degenerate);
        if (degenerate) bad = std::min(bad, f);
    }
    return bad == std::numeric_limits<int>::max() ? -1 : bad;
}

}  // namespace parallel

}  // namespace dcg::kernels
