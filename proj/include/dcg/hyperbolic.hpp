#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dcg/complex.hpp"
#include "dcg/metric.hpp"

namespace dcg {

/// Hyperbolic edge lengths indexed by edge id.
struct PHMetric {
    std::vector<double> length;
};

/// Positions in the Poincare disk, |z| < 1.
using DiskEmbedding = PlanarEmbedding;

/// Throws OutsideDisk unless every used vertex lies strictly inside the unit disk.
void check_in_disk(const Triangulation& tri, const DiskEmbedding& phi);

/// d_h(z1, z2) with sinh(d/2) = |z1 - z2| / sqrt((1 - |z1|^2)(1 - |z2|^2)).
double hyp_distance(Point z1, Point z2);

/// Disk automorphism z -> (z - a) / (1 - conj(a) z), sending a to 0.
Point mobius_to_origin(Point a, Point z);

/// PH metric of the geodesic realization. Throws OutsideDisk, or
/// DegenerateFace when a geodesic triangle is degenerate or reversed.
PHMetric ph_from_disk_embedding(const Triangulation& tri, const DiskEmbedding& phi);

/// Strict hyperbolic triangle inequality on every face.
bool ph_triangle_inequality(const Triangulation& tri, const PHMetric& lh);

/// Residual threshold for hyperbolic conformality in log-sinh space.
inline constexpr double kHypConformalTol = 1e-9;

struct HypConformality {
    /// u^h with lh2 = u^h *^h lh, i.e. sinh(lh2/2) = e^{(u_i+u_j)/2} sinh(lh/2);
    /// empty when the residual exceeds the tolerance.
    std::optional<ConformalFactor> u;
    double residual = 0.0;
};

HypConformality hyp_conformality_check(const Triangulation& tri, const PHMetric& lh, const PHMetric& lh2,
                                       double tol = kHypConformalTol);

/// u^h_i = u_i + ln((1 - |z_i|^2) / (1 - |z'_i|^2)).
ConformalFactor convert_factor_euclidean_to_hyperbolic(std::span<const double> u, const DiskEmbedding& phi,
                                                       const DiskEmbedding& phi2);
/// Inverse of the above.
ConformalFactor convert_factor_hyperbolic_to_euclidean(std::span<const double> uh, const DiskEmbedding& phi,
                                                       const DiskEmbedding& phi2);

enum class InducedStatus { Feasible, ConditionViolated };

struct InducedEmbedding {
    InducedStatus status = InducedStatus::Feasible;
    /// Neighbours of the center in counterclockwise order.
    std::vector<int> neighbors;
    /// arg(v(z_{k+1}) / v(z_k)) per consecutive pair (Feasible only).
    std::vector<double> turns;
    double turn_sum = 0.0;
    /// Spokes with l_ij > (1 - |z_i|^2) sin(epsilon).
    std::vector<int> violating_spokes;
};

/// Hyperbolic geodesic realization of the 1-ring of `center` with the same
/// vertex positions. Checks the spoke-length hypothesis; when it holds, builds
/// the tangent directions v(z_k) = exp_{z0}^{-1}(z_k) and verifies that each
/// turn lies in (0, pi) and that the turns add up to 2 pi. A failure of either
/// check throws NumericalFailure.
InducedEmbedding induced_hyp_embedding(const Triangulation& tri, const DiskEmbedding& phi, int center,
                                       double epsilon);

/// exp_{z0}^{-1}(z) in the tangent plane at z0 (identified with C).
Point hyp_log(Point z0, Point z);

struct HypDelaunayResult {
    bool delaunay = true;
    int witness_edge = -1;
};

/// Exact Euclidean incircle test across every interior edge.
HypDelaunayResult hyp_delaunay_check(const Triangulation& tri, const DiskEmbedding& phi);

}  // namespace dcg
