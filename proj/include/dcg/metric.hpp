#pragma once

#include <Eigen/SparseCore>
#include <span>
#include <vector>

#include "dcg/complex.hpp"
#include "dcg/error.hpp"

namespace dcg {

/// Edge lengths indexed by edge id.
struct PLMetric {
    std::vector<double> length;
};

/// Vertex function u acting on metrics by l'_ij = exp((u_i + u_j) / 2) l_ij.
using ConformalFactor = std::vector<double>;

/// Three angles per face; angle[3f + k] is the corner at face(f)[k].
struct CornerAngles {
    std::vector<double> angle;

    double at(int f, int k) const { return angle[3 * f + k]; }
};

/// Cotangent weights per edge. Interior edges carry the two-sided half-sum;
/// boundary edges carry the single half-cotangent.
struct EdgeWeights {
    std::vector<double> mu;
};

class TriangleInequalityError : public Error {
public:
    TriangleInequalityError(int face, PLMetric metric, const std::string& what)
        : Error(ErrorCode::ViolatedTriangleInequality, what), face_(face), metric_(std::move(metric)) {}

    int face() const noexcept { return face_; }
    /// The offending metric, kept for inspection.
    const PLMetric& metric() const noexcept { return metric_; }

private:
    int face_;
    PLMetric metric_;
};

/// Delaunay classification slack (radians) admitting exactly cocircular pairs.
inline constexpr double kDelaunaySlack = 1e-9;

PLMetric metric_from_embedding(const Triangulation& tri, const PlanarEmbedding& phi);

/// Throws TriangleInequalityError on the lowest violating face.
void check_triangle_inequality(const Triangulation& tri, const PLMetric& l);

CornerAngles corner_angles(const Triangulation& tri, const PLMetric& l);

struct Corner {
    int face = -1;
    int vertex = -1;
    double angle = 0.0;
};

struct NondegeneracyResult {
    bool ok = true;
    Corner witness;  // the smallest corner
};

/// True iff every corner angle is at least epsilon, epsilon in (0, pi/3].
NondegeneracyResult validate_nondegeneracy(const Triangulation& tri, const PLMetric& l, double epsilon);

Corner min_corner(const Triangulation& tri, const CornerAngles& angles);

enum class DelaunayClass { UniformlyDelaunay, Delaunay, NotDelaunay };

const char* to_string(DelaunayClass c);

struct DelaunayResult {
    DelaunayClass cls = DelaunayClass::UniformlyDelaunay;
    /// pi minus the largest opposite-angle sum over interior edges.
    double epsilon_star = 0.0;
    double max_angle_sum = 0.0;
    /// Interior edge attaining the largest sum (-1 when there is none).
    int witness_edge = -1;

    bool is_delaunay() const { return cls != DelaunayClass::NotDelaunay; }
};

DelaunayResult delaunay_check(const Triangulation& tri, const PLMetric& l, double slack = kDelaunaySlack);

/// u * l. Throws TriangleInequalityError (carrying the new metric) when a face
/// degenerates.
PLMetric conformal_change(const Triangulation& tri, const PLMetric& l, std::span<const double> u);

/// Per-vertex curvature: K_i = 2 pi - sum of angles at interior vertices,
/// boundary turning pi - sum of angles at boundary vertices, 0 if unused.
std::vector<double> curvature(const Triangulation& tri, const PLMetric& l);
std::vector<double> curvature(const Triangulation& tri, const CornerAngles& angles);

/// max |K_i| over interior vertices.
double max_interior_curvature(const Triangulation& tri, std::span<const double> k);

EdgeWeights cot_weights(const Triangulation& tri, const PLMetric& l);
EdgeWeights cot_weights(const Triangulation& tri, const CornerAngles& angles);

struct VertexFit {
    ConformalFactor u;
    /// max_e |u_a + u_b - rhs_e|.
    double residual = 0.0;
};

/// Least-squares vertex function with u_a + u_b = rhs_e on every edge.
/// Unused vertices get 0.
VertexFit fit_edge_sums(const Triangulation& tri, std::span<const double> rhs);

/// dK/du at u * l as an n x n matrix with rows only for interior vertices:
/// (i, j) = -mu_ij(u), (i, i) = sum_j mu_ij(u).
Eigen::SparseMatrix<double> curvature_jacobian(const Triangulation& tri, const PLMetric& l, std::span<const double> u);

}  // namespace dcg
