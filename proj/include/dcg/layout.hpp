#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dcg/complex.hpp"
#include "dcg/metric.hpp"

namespace dcg {

/// Placement of the first edge: `from` at `origin`, `to` at origin + l e^{i direction}.
/// from = to = -1 picks the first two corners of face 0.
struct Anchor {
    int from = -1;
    int to = -1;
    Point origin{0.0, 0.0};
    double direction = 0.0;
};

/// Breadth-first face layout of a flat metric on a disk patch.
PlanarEmbedding develop_flat_metric(const Triangulation& tri, const PLMetric& l, const Anchor& anchor = {});

struct Dilatation {
    std::vector<double> per_face;
    double max = 1.0;
    int worst_face = -1;
};

/// Dilatation of the face-wise affine map phi -> phi2.
Dilatation pl_map_dilatation(const Triangulation& tri, const PlanarEmbedding& phi, const PlanarEmbedding& phi2);

struct GeometricEstimates {
    double epsilon = 0.0;
    double min_angle = 0.0;
    int max_degree = 0;
    double degree_bound = 0.0;
    /// Extremes of l_ij / l_ik over ordered edge pairs sharing a face.
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    /// Extremes of Area / l_ij^2 over faces and their edges.
    double min_area_ratio = 0.0;
    double max_area_ratio = 0.0;
};

/// Degree, edge-ratio and area bounds for an embedding whose corners are all
/// at least epsilon. A failed bound throws TheoremViolated.
GeometricEstimates geometric_estimates_check(const Triangulation& tri, const PlanarEmbedding& phi, double epsilon);

struct CoverSample {
    double r = 0.0;
    /// Radius of the largest disk about phi(a) inside the subcomplex on {|z| < r}.
    double covered = 0.0;
};

struct ContainmentRadii {
    /// Distance from phi(a) to the image boundary (0 for a boundary vertex).
    double r_inner = 0.0;
    /// max |phi(j) - phi(a)| over the 1-ring of a.
    double r_outer = 0.0;
    /// max r / covered over the samples; empty when r_outer >= r_inner.
    std::optional<double> c_emp;
    std::vector<CoverSample> samples;
};

ContainmentRadii containment_radii(const Triangulation& tri, const PlanarEmbedding& phi, int a, int num_samples = 16);

/// True when p lies in the closed image of the faces (winding number of the
/// directed boundary edges, exact orientation tests).
bool image_contains(const Triangulation& tri, const PlanarEmbedding& phi, Point p);

/// Distance from p to the nearest boundary edge of the image.
double distance_to_boundary(const Triangulation& tri, const PlanarEmbedding& phi, Point p);

struct SchwarzResult {
    double m = 0.0;
    double bound = 0.0;
    /// min over checked vertices of u_i - bound; +inf when none is checked.
    double margin = 0.0;
    int worst_vertex = -1;
    int checked = 0;
    ConformalFactor u;
    double fit_residual = 0.0;
};

/// u_i >= ln(r2/r) - M, M = -ln(sin^3(eps)/8), for every vertex with
/// |phi2(i)| < r2/2. Requires eps <= pi/6, both metrics eps-nondegenerate and
/// Delaunay, phi(|T|) inside the closed disk D_r and D_{r2} inside phi2(|T|).
SchwarzResult schwarz_verify(const Triangulation& tri, const PlanarEmbedding& phi, const PlanarEmbedding& phi2,
                             double r, double r2, double epsilon);

/// Conformal factor u with l2 = u * l, by least squares on
/// u_i + u_j = 2 ln(l2_ij / l_ij). Throws NotConformalPair above `tol`.
VertexFit recover_conformal_factor(const Triangulation& tri, const PLMetric& l, const PLMetric& l2,
                                   double tol = 1e-9);

}  // namespace dcg
