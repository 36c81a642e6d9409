#pragma once

#include <span>

#include "dcg/complex.hpp"

namespace dcg {
struct WeightedGraph;
}

// Data-parallel inner loops. `parallel` is what the library calls; `serial`
// is the reference each parallel kernel is tested against. Every kernel
// gathers per output element in a fixed order, so both variants produce
// bit-identical results.
namespace dcg::kernels {

namespace serial {

/// Corner angles, three per face (angles[3f + k] sits at face(f)[k]).
/// Returns the lowest face id violating the strict triangle inequality, or -1.
int corner_angles(const Triangulation& tri, std::span<const double> lengths, std::span<double> angles);

/// Half-sum of cotangents of the angles opposite each edge.
void cot_weights(const Triangulation& tri, std::span<const double> angles, std::span<double> mu);

/// 2*pi - angle sum at interior vertices, pi - angle sum at boundary vertices.
void curvature(const Triangulation& tri, std::span<const double> angles, std::span<double> k);

/// (L u)_i = sum_j mu_ij (u_j - u_i).
void laplacian_apply(const WeightedGraph& g, std::span<const double> u, std::span<double> out);

/// Dilatation of the affine map taking each face of `from` onto the same face of `to`.
/// Returns the lowest degenerate face id, or -1.
int face_dilatation(const Triangulation& tri, std::span<const Point> from, std::span<const Point> to,
                    std::span<double> dilatation);

}  // namespace serial

namespace parallel {

int corner_angles(const Triangulation& tri, std::span<const double> lengths, std::span<double> angles);
void cot_weights(const Triangulation& tri, std::span<const double> angles, std::span<double> mu);
void curvature(const Triangulation& tri, std::span<const double> angles, std::span<double> k);
void laplacian_apply(const WeightedGraph& g, std::span<const double> u, std::span<double> out);
int face_dilatation(const Triangulation& tri, std::span<const Point> from, std::span<const Point> to,
                    std::span<double> dilatation);

}  // namespace parallel

/// Interior angle opposite side `a` of a triangle with sides a, b, c, via the
/// half-angle tangent formula. Requires the strict triangle inequality.
double angle_opposite(double a, double b, double c);

/// Dilatation K >= 1 of the linear map sending (z1, z2) to (w1, w2); +inf when
/// either pair is degenerate.
double linear_dilatation(Point z1, Point z2, Point w1, Point w2);

}  // namespace dcg::kernels
