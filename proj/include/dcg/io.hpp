#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcg/complex.hpp"
#include "dcg/flow.hpp"
#include "dcg/harmonic.hpp"
#include "dcg/metric.hpp"

namespace dcg {

/// Mesh JSON: {"vertices": N, "faces": [[i,j,k],...], "positions": [[x,y],...]?,
/// "lengths": {"i-j": l, ...}?, "model": "poincare"?}. Floats round-trip exactly.
struct MeshFile {
    Triangulation tri;
    std::optional<PlanarEmbedding> positions;
    std::optional<PLMetric> lengths;
    /// Positions are a Poincare disk embedding.
    bool poincare = false;
};

MeshFile parse_mesh_json(const std::string& text);
std::string mesh_to_json(const MeshFile& mesh);
MeshFile read_mesh(const std::string& path);
void write_mesh(const std::string& path, const MeshFile& mesh);

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

void write_curvature_csv(std::ostream& out, std::span<const double> k);
/// Rows vertex,<column>. Reading requires one row per vertex in 0..n-1.
void write_vertex_csv(std::ostream& out, const std::string& column, std::span<const double> values);
std::vector<double> read_vertex_csv(std::istream& in, int n);
void write_weights_csv(std::ostream& out, const Triangulation& tri, const EdgeWeights& w);
void write_graph_csv(std::ostream& out, const WeightedGraph& g);
WeightedGraph read_graph_csv(std::istream& in);
/// Rows t,vertex,u,K for every state; K is recomputed from the state's metric.
void write_trajectory_csv(std::ostream& out, const Triangulation& tri, const FlowTrajectory& tr);
void write_dilatation_csv(std::ostream& out, std::span<const double> per_face);

struct SvgOptions {
    double width = 600.0;
    /// Optional per-vertex values shown as a blue-to-red scale.
    std::optional<std::vector<double>> values;
    bool unit_circle = false;
};

std::string render_svg(const Triangulation& tri, const PlanarEmbedding& phi, const SvgOptions& opts = {});

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace dcg
