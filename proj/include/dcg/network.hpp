#pragma once

#include <span>
#include <vector>

#include "dcg/complex.hpp"
#include "dcg/error.hpp"
#include "dcg/harmonic.hpp"

namespace dcg {

enum class MetricMode { Edge, Vertex };

struct ModulusSolution {
    MetricMode mode = MetricMode::Vertex;
    /// eta per vertex or m per edge, nonnegative, rescaled so that the
    /// shortest terminal-joining path has weight exactly 1.
    std::vector<double> metric;
    /// sum eta^2 or sum mu m^2 of the rescaled metric: an upper bound.
    double objective = 0.0;
    /// Interior-point complementarity at exit; objective - gap bounds the
    /// optimum from below.
    double duality_gap = 0.0;
    /// Shortest path weight before rescaling.
    double separation = 0.0;
    /// Tight paths (vertex sequences from V1 to V2).
    std::vector<std::vector<int>> active_paths;
    int iterations = 0;
};

class IterationLimitError : public Error {
public:
    IterationLimitError(ModulusSolution best, const std::string& what)
        : Error(ErrorCode::IterationLimit, what), best_(std::move(best)) {}
    const ModulusSolution& best() const noexcept { return best_; }

private:
    ModulusSolution best_;
};

/// Cond(V1, V2) = inf sum mu m^2 over admissible edge metrics. Weights must
/// be nonnegative; zero-weight edges are free.
double edge_conductance(const WeightedGraph& g, std::span<const int> v1, std::span<const int> v2);
ModulusSolution edge_modulus(const WeightedGraph& g, std::span<const int> v1, std::span<const int> v2);

/// Mod(V1, V2) = inf sum eta^2 over vertex metrics with sum_{v in gamma} eta(v) >= 1
/// for every path gamma joining V1 and V2, endpoints included. Weights of
/// `g` are ignored.
ModulusSolution vertex_modulus(const WeightedGraph& g, std::span<const int> v1, std::span<const int> v2);

/// VEL = 1 / Mod.
double vel(const WeightedGraph& g, std::span<const int> v1, std::span<const int> v2);

/// Minimum over paths joining V1 and V2 of the summed vertex weight,
/// endpoints included. Dijkstra with ties broken by vertex id.
double min_path_weight(const WeightedGraph& g, std::span<const double> eta, std::span<const int> v1,
                       std::span<const int> v2);

struct HeCheck {
    bool holds = true;
    double vel = 0.0;
    double resistance = 0.0;
    double c = 0.0;
    /// 2 C Res - VEL.
    double slack = 0.0;
    /// Largest weight sum at a vertex.
    double max_weight_sum = 0.0;
};

/// VEL(V1, V2) <= 2 C Res(V1, V2). Negative weights are replaced by zero.
HeCheck he_inequality_check(const WeightedGraph& g, std::span<const int> v1, std::span<const int> v2, double c);

/// Largest vertex weight sum with negative weights counted as zero.
double max_vertex_weight_sum(const WeightedGraph& g);

/// (1 / 2 pi) ln(r2 / r).
double annulus_modulus(double r, double r2);

struct DoublingCheck {
    bool holds = true;
    /// Mod(A_{r,r2}) >= threshold.
    bool applies = false;
    /// A_{r,r2} contains some A_{s,2s}.
    bool contains = false;
    double modulus = 0.0;
};

/// A round annulus with modulus at least `threshold` contains a doubling
/// annulus. Any threshold above 9 pi works; 100 is the customary choice.
DoublingCheck annulus_doubling_check(double r, double r2, double threshold = 100.0);

struct AnnulusBound {
    bool holds = true;
    double vel = 0.0;
    /// 1 / sum eta^2 for eta(i) = d_M(i) / (r2 - r1) inside D_{r2}.
    double proof_bound = 0.0;
    /// Shortest path weight of that eta; admissible when >= 1.
    double proof_separation = 0.0;
    std::vector<double> proof_metric;
};

/// Requires |phi(V1)| < r1, |phi(V2)| >= r2 and every 1-ring of V1 inside D_{r2}.
AnnulusBound vel_annulus_bound_check(const Triangulation& tri, const PlanarEmbedding& phi, std::span<const int> v1,
                                     std::span<const int> v2, double r1, double r2);

struct AdditivityCheck {
    bool holds = true;
    double total = 0.0;
    std::vector<double> terms;
    double sum = 0.0;
    double slack = 0.0;
};

/// VEL(V_1, V_2m) >= sum_k VEL(V_{2k-1}, V_{2k}) for disjoint sets where each
/// V_j separates every earlier set from every later one.
AdditivityCheck vel_additivity_check(const WeightedGraph& g, const std::vector<std::vector<int>>& sets);

/// True when every path from `a` to `c` meets `b`.
bool separates(const WeightedGraph& g, std::span<const int> b, std::span<const int> a, std::span<const int> c);

struct GrowthRow {
    int k = 0;
    double radius = 0.0;
    /// VEL({|z| < r0}, {|z| >= r0 2^k}).
    double vel = 0.0;
    /// VEL between the shells at r0 2^{k-1} and just inside r0 2^k.
    double term = 0.0;
    double cumulative = 0.0;
};

struct GrowthTable {
    double r0 = 0.0;
    double shell = 0.0;
    std::vector<GrowthRow> rows;
    bool monotone = true;
    bool superadditive = true;
};

/// Doubling-radius VEL table around the origin. r0 = 0 picks twice the
/// longest edge; shells have width equal to the longest edge.
GrowthTable parabolicity_growth(const Triangulation& tri, const PlanarEmbedding& phi, int k_max, double r0 = 0.0);

}  // namespace dcg
