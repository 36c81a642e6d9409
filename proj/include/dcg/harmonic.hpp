#pragma once

#include <span>
#include <vector>

#include "dcg/complex.hpp"

namespace dcg {

struct EdgeWeights;

/// Electrical network G_mu = (V, E, mu) with CSR adjacency.
struct WeightedGraph {
    int num_vertices = 0;
    std::vector<Edge> edges;
    std::vector<double> mu;
    std::vector<int> offsets;
    std::vector<int> adj_vertex;
    std::vector<int> adj_edge;

    static WeightedGraph from_edges(int num_vertices, std::vector<Edge> edges, std::vector<double> mu);
    static WeightedGraph from_triangulation(const Triangulation& tri, const EdgeWeights& w);
    /// Unit weights on every edge of the triangulation.
    static WeightedGraph unit(const Triangulation& tri);

    std::span<const int> neighbors(int v) const {
        return std::span<const int>(adj_vertex).subspan(offsets[v], offsets[v + 1] - offsets[v]);
    }
    std::span<const int> incident_edges(int v) const {
        return std::span<const int>(adj_edge).subspan(offsets[v], offsets[v + 1] - offsets[v]);
    }
    bool has_edges(int v) const { return offsets[v + 1] > offsets[v]; }
    /// Sum of weights over edges at v.
    double weight_sum(int v) const;
};

std::vector<double> laplacian_apply(const WeightedGraph& g, std::span<const double> u);

struct DirichletOptions {
    /// Reject non-positive weights on edges touching an unknown.
    bool require_positive = true;
    /// Weights at or below this count as zero.
    double zero_threshold = 1e-12;
};

/// Solves Delta_mu u = 0 at `interior` vertices with u = f elsewhere. `f` is
/// indexed over all vertices; its interior entries are ignored.
std::vector<double> dirichlet_solve(const WeightedGraph& g, std::span<const int> interior, std::span<const double> f,
                                    const DirichletOptions& opts = {});

/// max_i |(Delta_mu u)_i| over the given vertices.
double harmonic_residual(const WeightedGraph& g, std::span<const int> interior, std::span<const double> u);

struct MaxPrincipleResult {
    bool ok = true;
    int witness = -1;  // interior vertex beyond the boundary range
    double excess = 0.0;
};

/// Checks that u, harmonic on `interior`, attains its max and min off `interior`.
/// Throws NotHarmonic when the harmonic residual exceeds `harmonic_tol`.
MaxPrincipleResult max_principle_check(const WeightedGraph& g, std::span<const int> interior, std::span<const double> u,
                                       double tol = 1e-10, double harmonic_tol = 1e-9);

/// Potential u with u = 0 on v1 and u = 1 on v2, harmonic elsewhere in the
/// positive-weight component of the terminals.
struct Potential {
    std::vector<double> u;
    double energy = 0.0;  // sum mu (u_i - u_j)^2 = Cond
};
Potential terminal_potential(const WeightedGraph& g, std::span<const int> v1, std::span<const int> v2);

/// Res(V1, V2) = 1 / Cond(V1, V2) from the potential problem.
double effective_resistance(const WeightedGraph& g, std::span<const int> v1, std::span<const int> v2);

/// Connectivity after removing edges with mu <= threshold, over vertices
/// that carry at least one edge.
bool positive_subgraph_connected(const WeightedGraph& g, double threshold = 1e-12);

}  // namespace dcg
