#include "dcg/harmonic.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dcg/error.hpp"
#include "dcg/kernels.hpp"
#include "dcg/metric.hpp"

namespace dcg {

namespace {

constexpr int kDenseFallbackLimit = 2000;

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

WeightedGraph WeightedGraph::from_edges(int num_vertices, std::vector<Edge> edges, std::vector<double> mu) {
    if (edges.size() != mu.size()) throw Error(ErrorCode::InvalidArgument, "edge and weight counts differ");
    WeightedGraph g;
    g.num_vertices = num_vertices;
    std::vector<int> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return edges[x] < edges[y]; });
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Edge& e = edges[order[k]];
        if (e.a == e.b) throw Error(ErrorCode::InvalidArgument, "self loop at " + std::to_string(e.a));
        if (e.a < 0 || e.b >= num_vertices) throw Error(ErrorCode::InvalidArgument, "edge vertex out of range");
        if (k > 0 && edges[order[k - 1]] == e)
            throw Error(ErrorCode::InvalidArgument,
                        "duplicate edge " + std::to_string(e.a) + "-" + std::to_string(e.b));
        if (!std::isfinite(mu[order[k]])) throw Error(ErrorCode::InvalidArgument, "non-finite edge weight");
        g.edges.push_back(e);
        g.mu.push_back(mu[order[k]]);
    }
    g.offsets.assign(num_vertices + 1, 0);
    for (const Edge& e : g.edges) {
        ++g.offsets[e.a + 1];
        ++g.offsets[e.b + 1];
    }
    for (int v = 0; v < num_vertices; ++v) g.offsets[v + 1] += g.offsets[v];
    g.adj_vertex.resize(g.offsets.back());
    g.adj_edge.resize(g.offsets.back());
    std::vector<int> fill(g.offsets.begin(), g.offsets.end() - 1);
    // Edges are sorted, so each adjacency row comes out in a fixed order.
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        const Edge& ed = g.edges[e];
        g.adj_vertex[fill[ed.a]] = ed.b;
        g.adj_edge[fill[ed.a]++] = e;
        g.adj_vertex[fill[ed.b]] = ed.a;
        g.adj_edge[fill[ed.b]++] = e;
    }
    return g;
}

WeightedGraph WeightedGraph::from_triangulation(const Triangulation& tri, const EdgeWeights& w) {
    if (static_cast<int>(w.mu.size()) != tri.num_edges())
        throw Error(ErrorCode::InvalidArgument, "weight count differs from edge count");
    return from_edges(tri.num_vertices(), {tri.edges().begin(), tri.edges().end()}, w.mu);
}

WeightedGraph WeightedGraph::unit(const Triangulation& tri) {
    return from_edges(tri.num_vertices(), {tri.edges().begin(), tri.edges().end()},
                      std::vector<double>(tri.num_edges(), 1.0));
}

double WeightedGraph::weight_sum(int v) const {
    double s = 0.0;
    for (int e : incident_edges(v)) s += mu[e];
    return s;
}

std::vector<double> laplacian_apply(const WeightedGraph& g, std::span<const double> u) {
    if (static_cast<int>(u.size()) != g.num_vertices)
        throw Error(ErrorCode::InvalidArgument, "vertex function size mismatch");
    std::vector<double> out(g.num_vertices);
    kernels::parallel::laplacian_apply(g, u, out);
    return out;
}

std::vector<double> dirichlet_solve(const WeightedGraph& g, std::span<const int> interior, std::span<const double> f,
                                    const DirichletOptions& opts) {
    const int nv = g.num_vertices;
    if (static_cast<int>(f.size()) != nv) throw Error(ErrorCode::InvalidArgument, "boundary data size mismatch");
    std::vector<int> slot(nv, -1);
    const int n = static_cast<int>(interior.size());
    for (int k = 0; k < n; ++k) {
        const int v = interior[k];
        if (v < 0 || v >= nv) throw Error(ErrorCode::InvalidArgument, "interior vertex out of range");
        if (slot[v] >= 0) throw Error(ErrorCode::InvalidArgument, "interior vertex listed twice");
        slot[v] = k;
    }
    std::vector<double> u(f.begin(), f.end());
    if (n == 0) return u;
    if (n == nv) throw Error(ErrorCode::SingularSystem, "no boundary vertices");

    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    // Each unknown must reach the boundary through edges of non-negligible weight.
    UnionFind uf(nv + 1);
    for (int k = 0; k < n; ++k) {
        const int i = interior[k];
        double diag = 0.0;
        const auto nb = g.neighbors(i);
        const auto es = g.incident_edges(i);
        for (std::size_t t = 0; t < nb.size(); ++t) {
            const double mu = g.mu[es[t]];
            const int j = nb[t];
            if (opts.require_positive && mu <= opts.zero_threshold)
                throw Error(ErrorCode::ZeroWeightAtInterior,
                            "edge " + std::to_string(i) + "-" + std::to_string(j) + " has weight " + std::to_string(mu));
            if (std::abs(mu) > opts.zero_threshold) uf.unite(i, slot[j] >= 0 ? j : nv);
            diag += mu;
            if (slot[j] >= 0)
                trip.emplace_back(k, slot[j], -mu);
            else
                b[k] += mu * f[j];
        }
        trip.emplace_back(k, k, diag);
    }
    for (int k = 0; k < n; ++k)
        if (uf.find(interior[k]) != uf.find(nv))
            throw Error(ErrorCode::SingularSystem,
                        "vertex " + std::to_string(interior[k]) + " is cut off from the boundary");
    Eigen::SparseMatrix<double> a(n, n);
    a.setFromTriplets(trip.begin(), trip.end());

    const double tol = 1e-10 * (1.0 + inf_norm(f));
    auto residual_ok = [&](const Eigen::VectorXd& x) {
        return (a * x - b).lpNorm<Eigen::Infinity>() <= tol && x.allFinite();
    };

    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(1e-12);
    cg.setMaxIterations(10 * n);
    cg.compute(a);
    Eigen::VectorXd x = cg.solve(b);
    if (cg.info() != Eigen::Success || !residual_ok(x)) {
        if (n < kDenseFallbackLimit) {
            x = Eigen::MatrixXd(a).partialPivLu().solve(b);
        } else {
            Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
            lu.compute(a);
            if (lu.info() != Eigen::Success) throw Error(ErrorCode::SingularSystem, "factorization failed");
            x = lu.solve(b);
        }
        if (!residual_ok(x)) throw Error(ErrorCode::SingularSystem, "solution residual above tolerance");
    }
    for (int k = 0; k < n; ++k) u[interior[k]] = x[k];
    return u;
}

double harmonic_residual(const WeightedGraph& g, std::span<const int> interior, std::span<const double> u) {
    double m = 0.0;
    for (int i : interior) {
        double acc = 0.0;
        const auto nb = g.neighbors(i);
        const auto es = g.incident_edges(i);
        for (std::size_t t = 0; t < nb.size(); ++t) acc += g.mu[es[t]] * (u[nb[t]] - u[i]);
        m = std::max(m, std::abs(acc));
    }
    return m;
}

MaxPrincipleResult max_principle_check(const WeightedGraph& g, std::span<const int> interior, std::span<const double> u,
                                       double tol, double harmonic_tol) {
    const double res = harmonic_residual(g, interior, u);
    if (res > harmonic_tol * (1.0 + inf_norm(u)))
        throw Error(ErrorCode::NotHarmonic, "harmonic residual " + std::to_string(res));
    std::vector<char> inner(g.num_vertices, 0);
    for (int i : interior) inner[i] = 1;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int v = 0; v < g.num_vertices; ++v) {
        if (inner[v] || !g.has_edges(v)) continue;
        lo = std::min(lo, u[v]);
        hi = std::max(hi, u[v]);
    }
    MaxPrincipleResult r;
    for (int i : interior) {
        const double excess = std::max(u[i] - hi, lo - u[i]);
        if (excess > tol && excess > r.excess) {
            r.ok = false;
            r.witness = i;
            r.excess = excess;
        }
    }
    return r;
}

Potential terminal_potential(const WeightedGraph& g, std::span<const int> v1, std::span<const int> v2) {
    constexpr double kZero = 1e-12;
    if (v1.empty() || v2.empty()) throw Error(ErrorCode::InvalidArgument, "terminal sets must be nonempty");
    std::vector<int> role(g.num_vertices, 0);
    for (int v : v1) role.at(v) = 1;
    for (int v : v2) {
        if (role.at(v) == 1) throw Error(ErrorCode::InvalidArgument, "terminal sets overlap");
        role[v] = 2;
    }
    UnionFind uf(g.num_vertices);
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (g.mu[e] > kZero) uf.unite(g.edges[e].a, g.edges[e].b);
    std::vector<char> touches1(g.num_vertices, 0), touches2(g.num_vertices, 0);
    for (int v : v1) touches1[uf.find(v)] = 1;
    for (int v : v2) touches2[uf.find(v)] = 1;
    bool linked = false;
    for (int v = 0; v < g.num_vertices; ++v) linked = linked || (touches1[v] && touches2[v]);
    if (!linked) throw Error(ErrorCode::DisconnectedTerminals, "no positive-weight path joins the terminals");

    std::vector<Edge> pe;
    std::vector<double> pmu;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (g.mu[e] > kZero) {
            pe.push_back(g.edges[e]);
            pmu.push_back(g.mu[e]);
        }
    const WeightedGraph pg = WeightedGraph::from_edges(g.num_vertices, pe, pmu);
    std::vector<int> interior;
    std::vector<double> f(g.num_vertices, 0.0);
    for (int v = 0; v < g.num_vertices; ++v) {
        const int root = uf.find(v);
        if (role[v] == 2) f[v] = 1.0;
        if (role[v] == 0 && pg.has_edges(v) && (touches1[root] || touches2[root])) interior.push_back(v);
    }
    Potential p;
    p.u = dirichlet_solve(pg, interior, f);
    for (std::size_t e = 0; e < pg.edges.size(); ++e) {
        const double d = p.u[pg.edges[e].a] - p.u[pg.edges[e].b];
        p.energy += pg.mu[e] * d * d;
    }
    return p;
}

double effective_resistance(const WeightedGraph& g, std::span<const int> v1, std::span<const int> v2) {
    return 1.0 / terminal_potential(g, v1, v2).energy;
}

bool positive_subgraph_connected(const WeightedGraph& g, double threshold) {
    UnionFind uf(g.num_vertices);
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (g.mu[e] > threshold) uf.unite(g.edges[e].a, g.edges[e].b);
    int root = -1;
    for (int v = 0; v < g.num_vertices; ++v) {
        if (!g.has_edges(v)) continue;
        if (root < 0)
            root = uf.find(v);
        else if (uf.find(v) != root)
            return false;
    }
    return true;
}

}  // namespace dcg
