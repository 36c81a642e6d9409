#include "dcg/network.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "dcg/qp.hpp"

namespace dcg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_terminals(int n, std::span<const int> v1, std::span<const int> v2) {
    if (v1.empty() || v2.empty()) throw Error(ErrorCode::InvalidArgument, "terminal sets must be nonempty");
    std::vector<char> in1(n, 0);
    for (int v : v1) {
        if (v < 0 || v >= n) throw Error(ErrorCode::InvalidArgument, "terminal out of range");
        in1[v] = 1;
    }
    for (int v : v2) {
        if (v < 0 || v >= n) throw Error(ErrorCode::InvalidArgument, "terminal out of range");
        if (in1[v]) throw Error(ErrorCode::InvalidArgument, "terminal sets overlap at vertex " + std::to_string(v));
    }
}

// Vertices reachable from v1 along usable edges.
std::vector<char> reachable(const WeightedGraph& g, std::span<const int> v1, bool positive_only) {
    std::vector<char> seen(g.num_vertices, 0);
    std::vector<int> stack(v1.begin(), v1.end());
    for (int v : v1) seen[v] = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        const auto nb = g.neighbors(v);
        const auto es = g.incident_edges(v);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            if (positive_only && !(g.mu[es[k]] > 0)) continue;
            if (!seen[nb[k]]) {
                seen[nb[k]] = 1;
                stack.push_back(nb[k]);
            }
        }
    }
    return seen;
}

struct ShortestPaths {
    std::vector<double> dist;
    std::vector<int> pred;
};

// Vertex-weighted (edge_len empty) or edge-weighted Dijkstra from v1.
ShortestPaths dijkstra(const WeightedGraph& g, std::span<const double> eta, std::span<const double> edge_len,
                       std::span<const int> v1, bool positive_only) {
    ShortestPaths sp;
    sp.dist.assign(g.num_vertices, kInf);
    sp.pred.assign(g.num_vertices, -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (int v : v1) {
        const double d0 = edge_len.empty() ? eta[v] : 0.0;
        if (d0 < sp.dist[v]) {
            sp.dist[v] = d0;
            pq.emplace(d0, v);
        }
    }
    while (!pq.empty()) {
        const auto [d, v] = pq.top();
        pq.pop();
        if (d > sp.dist[v]) continue;
        const auto nb = g.neighbors(v);
        const auto es = g.incident_edges(v);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            if (positive_only && !(g.mu[es[k]] > 0)) continue;
            const int w = nb[k];
            const double nd = d + (edge_len.empty() ? eta[w] : edge_len[es[k]]);
            if (nd < sp.dist[w] || (nd == sp.dist[w] && v < sp.pred[w])) {
                const bool improved = nd < sp.dist[w];
                sp.dist[w] = nd;
                sp.pred[w] = v;
                if (improved) pq.emplace(nd, w);
            }
        }
    }
    return sp;
}

ModulusSolution solve_modulus(const WeightedGraph& g, std::span<const int> v1, std::span<const int> v2, MetricMode mode) {
    const int n = g.num_vertices;
    check_terminals(n, v1, v2);
    const bool edge_mode = mode == MetricMode::Edge;
    if (edge_mode)
        for (double m : g.mu)
            if (m < 0 || !std::isfinite(m)) throw Error(ErrorCode::InvalidArgument, "edge conductance needs mu >= 0");

    const auto comp = reachable(g, v1, edge_mode);
    std::vector<int> targets;
    for (int v : v2)
        if (comp[v]) targets.push_back(v);
    if (targets.empty()) throw Error(ErrorCode::DisconnectedTerminals, "no path joins the terminal sets");

    // Variables: metric (eta per vertex or m per edge) then a potential p
    // per vertex with p <= shortest-path weight, forced >= 1 on V2.
    std::vector<int> vslot(n, -1);
    int nv = 0;
    for (int v = 0; v < n; ++v)
        if (comp[v]) vslot[v] = nv++;
    std::vector<int> eslot(g.edges.size(), -1);
    int nm = 0;
    if (edge_mode) {
        for (std::size_t e = 0; e < g.edges.size(); ++e)
            if (comp[g.edges[e].a] && g.mu[e] > 0) eslot[e] = nm++;
    } else {
        nm = nv;
    }
    const int nx = nm + nv;
    auto pvar = [&](int v) { return nm + vslot[v]; };

    SeparableQP qp;
    qp.q.assign(nx, 0.0);
    qp.c.assign(nx, 0.0);
    if (edge_mode) {
        for (std::size_t e = 0; e < g.edges.size(); ++e)
            if (eslot[e] >= 0) qp.q[eslot[e]] = 2.0 * g.mu[e];
    } else {
        for (int k = 0; k < nm; ++k) qp.q[k] = 2.0;
    }
    std::vector<Eigen::Triplet<double>> trip;
    int row = 0;
    auto add_row = [&](std::initializer_list<std::pair<int, double>> coeffs, double rhs) {
        for (const auto& [col, val] : coeffs) trip.emplace_back(row, col, val);
        qp.b.push_back(rhs);
        ++row;
    };
    for (int v : v1) {
        if (edge_mode)
            add_row({{pvar(v), 1.0}}, 0.0);
        else
            add_row({{pvar(v), 1.0}, {vslot[v], -1.0}}, 0.0);
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const int a = g.edges[e].a, b = g.edges[e].b;
        if (!comp[a]) continue;
        if (edge_mode) {
            if (eslot[e] < 0) continue;
            add_row({{pvar(b), 1.0}, {pvar(a), -1.0}, {eslot[e], -1.0}}, 0.0);
            add_row({{pvar(a), 1.0}, {pvar(b), -1.0}, {eslot[e], -1.0}}, 0.0);
        } else {
            add_row({{pvar(b), 1.0}, {pvar(a), -1.0}, {vslot[b], -1.0}}, 0.0);
            add_row({{pvar(a), 1.0}, {pvar(b), -1.0}, {vslot[a], -1.0}}, 0.0);
        }
    }
    for (int v : targets) add_row({{pvar(v), -1.0}}, -1.0);
    for (int k = 0; k < nm; ++k) add_row({{k, -1.0}}, 0.0);
    qp.a.resize(row, nx);
    qp.a.setFromTriplets(trip.begin(), trip.end());

    const QPResult r = solve_qp(qp);

    ModulusSolution sol;
    sol.mode = mode;
    sol.iterations = r.iterations;
    sol.duality_gap = r.gap;
    std::vector<double> eta(n, 0.0), len(g.edges.size(), 0.0);
    ShortestPaths sp;
    if (edge_mode) {
        for (std::size_t e = 0; e < g.edges.size(); ++e)
            if (eslot[e] >= 0) len[e] = std::max(0.0, r.x[eslot[e]]);
        sp = dijkstra(g, {}, len, v1, true);
    } else {
        for (int v = 0; v < n; ++v)
            if (vslot[v] >= 0) eta[v] = std::max(0.0, r.x[vslot[v]]);
        sp = dijkstra(g, eta, {}, v1, false);
    }
    double sep = kInf;
    for (int v : targets) sep = std::min(sep, sp.dist[v]);
    if (!(sep > 0) || !std::isfinite(sep)) throw Error(ErrorCode::NumericalFailure, "modulus solve produced no separation");
    sol.separation = sep;

    // Rescale so the shortest path has weight exactly one.
    if (edge_mode) {
        for (double& x : len) x /= sep;
        for (std::size_t e = 0; e < g.edges.size(); ++e) sol.objective += g.mu[e] * len[e] * len[e];
        sol.metric = std::move(len);
    } else {
        for (double& x : eta) x /= sep;
        for (double x : eta) sol.objective += x * x;
        sol.metric = std::move(eta);
    }
    for (int v : targets) {
        if (sol.active_paths.size() >= 64) break;
        if (sp.dist[v] > sep * (1 + 1e-6)) continue;
        std::vector<int> path;
        for (int w = v; w >= 0; w = sp.pred[w]) path.push_back(w);
        std::reverse(path.begin(), path.end());
        sol.active_paths.push_back(std::move(path));
    }
    if (!r.converged)
        throw IterationLimitError(sol, "interior-point solve stopped after " + std::to_string(r.iterations) +
                                           " iterations with gap " + std::to_string(r.gap));
    return sol;
}

std::vector<int> select(const Triangulation& tri, const PlanarEmbedding& phi, auto&& pred) {
    std::vector<int> out;
    for (int v = 0; v < tri.num_vertices(); ++v)
        if (tri.is_used(v) && pred(std::abs(phi[v]))) out.push_back(v);
    return out;
}

}  // namespace

ModulusSolution edge_modulus(const WeightedGraph& g, std::span<const int> v1, std::span<const int> v2) {
    return solve_modulus(g, v1, v2, MetricMode::Edge);
}

double edge_conductance(const WeightedGraph& g, std::span<const int> v1, std::span<const int> v2) {
    return edge_modulus(g, v1, v2).objective;
}

ModulusSolution vertex_modulus(const WeightedGraph& g, std::span<const int> v1, std::span<const int> v2) {
    return solve_modulus(g, v1, v2, MetricMode::Vertex);
}

double vel(const WeightedGraph& g, std::span<const int> v1, std::span<const int> v2) {
    return 1.0 / vertex_modulus(g, v1, v2).objective;
}

double min_path_weight(const WeightedGraph& g, std::span<const double> eta, std::span<const int> v1,
                       std::span<const int> v2) {
    if (static_cast<int>(eta.size()) != g.num_vertices) throw Error(ErrorCode::InvalidArgument, "one weight per vertex");
    const auto sp = dijkstra(g, eta, {}, v1, false);
    double best = kInf;
    for (int v : v2) best = std::min(best, sp.dist[v]);
    return best;
}

double max_vertex_weight_sum(const WeightedGraph& g) {
    double best = 0.0;
    for (int v = 0; v < g.num_vertices; ++v) {
        double s = 0.0;
        for (int e : g.incident_edges(v)) s += std::max(0.0, g.mu[e]);
        best = std::max(best, s);
    }
    return best;
}

HeCheck he_inequality_check(const WeightedGraph& g, std::span<const int> v1, std::span<const int> v2, double c) {
    WeightedGraph clamped = g;
    for (double& m : clamped.mu) m = std::max(0.0, m);
    HeCheck out;
    out.c = c;
    out.max_weight_sum = max_vertex_weight_sum(clamped);
    if (out.max_weight_sum > c * (1 + 1e-12))
        throw Error(ErrorCode::HypothesisViolated, "vertex weight sum " + std::to_string(out.max_weight_sum) +
                                                       " exceeds C = " + std::to_string(c));
    out.vel = vel(clamped, v1, v2);
    out.resistance = effective_resistance(clamped, v1, v2);
    out.slack = 2 * c * out.resistance - out.vel;
    out.holds = out.slack >= -1e-6;
    return out;
}

double annulus_modulus(double r, double r2) {
    if (!(r > 0) || !(r2 > r) || !std::isfinite(r2)) throw Error(ErrorCode::BadRadii, "need 0 < r < r2 < inf");
    return std::log(r2 / r) / (2 * std::numbers::pi);
}

DoublingCheck annulus_doubling_check(double r, double r2, double threshold) {
    if (!(threshold > 9 * std::numbers::pi))
        throw Error(ErrorCode::InvalidArgument, "threshold must exceed 9 pi");
    DoublingCheck out;
    out.modulus = annulus_modulus(r, r2);
    out.applies = out.modulus >= threshold;
    out.contains = r2 >= 2 * r;
    out.holds = !out.applies || out.contains;
    return out;
}

AnnulusBound vel_annulus_bound_check(const Triangulation& tri, const PlanarEmbedding& phi, std::span<const int> v1,
                                     std::span<const int> v2, double r1, double r2) {
    if (!(r1 > 0) || !(r2 > r1)) throw Error(ErrorCode::BadRadii, "need 0 < r1 < r2");
    const int n = tri.num_vertices();
    check_terminals(n, v1, v2);
    for (int v : v1) {
        if (!(std::abs(phi[v]) < r1))
            throw Error(ErrorCode::HypothesisViolated, "V1 vertex " + std::to_string(v) + " outside D_r1");
        for (int j : tri.neighbors(v))
            if (!(std::abs(phi[j]) < r2))
                throw Error(ErrorCode::HypothesisViolated,
                            "1-ring of V1 vertex " + std::to_string(v) + " leaves D_r2 at " + std::to_string(j));
    }
    for (int v : v2)
        if (std::abs(phi[v]) < r2)
            throw Error(ErrorCode::HypothesisViolated, "V2 vertex " + std::to_string(v) + " inside D_r2");

    AnnulusBound out;
    out.proof_metric.assign(n, 0.0);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!tri.is_used(i) || !(std::abs(phi[i]) < r2)) continue;
        bool inner_neighbor = false;
        double dm = 0.0;
        for (int j : tri.neighbors(i)) {
            dm = std::max(dm, std::abs(phi[i] - phi[j]));
            if (std::abs(phi[j]) < r2) inner_neighbor = true;
        }
        if (!inner_neighbor) continue;
        out.proof_metric[i] = dm / (r2 - r1);
        sum += out.proof_metric[i] * out.proof_metric[i];
    }
    const auto g = WeightedGraph::unit(tri);
    out.proof_separation = min_path_weight(g, out.proof_metric, v1, v2);
    out.proof_bound = 1.0 / sum;
    out.vel = vel(g, v1, v2);
    out.holds = out.proof_separation >= 1 - 1e-12 && out.vel >= out.proof_bound * (1 - 1e-8);
    return out;
}

bool separates(const WeightedGraph& g, std::span<const int> b, std::span<const int> a, std::span<const int> c) {
    std::vector<char> blocked(g.num_vertices, 0), goal(g.num_vertices, 0), seen(g.num_vertices, 0);
    for (int v : b) blocked[v] = 1;
    for (int v : c) goal[v] = 1;
    std::vector<int> stack;
    for (int v : a)
        if (!blocked[v] && !seen[v]) {
            seen[v] = 1;
            stack.push_back(v);
        }
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        if (goal[v]) return false;
        for (int w : g.neighbors(v))
            if (!blocked[w] && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return true;
}

AdditivityCheck vel_additivity_check(const WeightedGraph& g, const std::vector<std::vector<int>>& sets) {
    if (sets.size() < 2 || sets.size() % 2) throw Error(ErrorCode::InvalidArgument, "need an even number of sets");
    std::vector<int> owner(g.num_vertices, -1);
    for (std::size_t s = 0; s < sets.size(); ++s) {
        if (sets[s].empty()) throw Error(ErrorCode::InvalidArgument, "set " + std::to_string(s + 1) + " is empty");
        for (int v : sets[s]) {
            if (v < 0 || v >= g.num_vertices) throw Error(ErrorCode::InvalidArgument, "vertex out of range");
            if (owner[v] >= 0) throw Error(ErrorCode::InvalidArgument, "sets overlap at vertex " + std::to_string(v));
            owner[v] = static_cast<int>(s);
        }
    }
    for (std::size_t i2 = 1; i2 + 1 < sets.size(); ++i2)
        for (std::size_t i1 = 0; i1 < i2; ++i1)
            for (std::size_t i3 = i2 + 1; i3 < sets.size(); ++i3)
                if (!separates(g, sets[i2], sets[i1], sets[i3]))
                    throw Error(ErrorCode::SeparationViolated, "V" + std::to_string(i2 + 1) + " does not separate V" +
                                                                   std::to_string(i1 + 1) + " from V" +
                                                                   std::to_string(i3 + 1));
    AdditivityCheck out;
    out.total = vel(g, sets.front(), sets.back());
    for (std::size_t k = 0; k + 1 < sets.size(); k += 2) {
        out.terms.push_back(vel(g, sets[k], sets[k + 1]));
        out.sum += out.terms.back();
    }
    out.slack = out.total - out.sum;
    out.holds = out.slack >= -1e-6;
    return out;
}

GrowthTable parabolicity_growth(const Triangulation& tri, const PlanarEmbedding& phi, int k_max, double r0) {
    if (k_max < 1) throw Error(ErrorCode::InvalidArgument, "need at least one ring");
    double h = 0.0;
    for (const Edge& e : tri.edges()) h = std::max(h, std::abs(phi[e.a] - phi[e.b]));
    if (r0 == 0.0) r0 = 2 * h;
    if (!(r0 >= 2 * h)) throw Error(ErrorCode::InvalidArgument, "r0 must be at least twice the longest edge");

    GrowthTable table;
    table.r0 = r0;
    table.shell = h;
    const auto g = WeightedGraph::unit(tri);
    const auto core = select(tri, phi, [&](double r) { return r < r0; });
    if (core.empty()) throw Error(ErrorCode::InvalidArgument, "no vertex inside r0");

    struct Job {
        std::vector<int> outside, inner_shell, outer_shell;
    };
    std::vector<Job> jobs(k_max);
    for (int k = 1; k <= k_max; ++k) {
        const double rho = r0 * std::ldexp(1.0, k), prev = r0 * std::ldexp(1.0, k - 1);
        Job& j = jobs[k - 1];
        j.outside = select(tri, phi, [&](double r) { return r >= rho; });
        j.inner_shell = select(tri, phi, [&](double r) { return r >= prev && r < prev + h; });
        j.outer_shell = select(tri, phi, [&](double r) { return r >= rho - h && r < rho; });
        if (j.outside.empty() || j.inner_shell.empty() || j.outer_shell.empty())
            throw Error(ErrorCode::InvalidArgument, "embedding does not cover radius " + std::to_string(rho));
    }

    table.rows.resize(k_max);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int k = 1; k <= k_max; ++k) {
        try {
            GrowthRow& row = table.rows[k - 1];
            row.k = k;
            row.radius = r0 * std::ldexp(1.0, k);
            row.vel = vel(g, core, jobs[k - 1].outside);
            row.term = vel(g, jobs[k - 1].inner_shell, jobs[k - 1].outer_shell);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    double cum = 0.0;
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
        cum += table.rows[k].term;
        table.rows[k].cumulative = cum;
        if (k > 0 && table.rows[k].vel < table.rows[k - 1].vel * (1 - 1e-8)) table.monotone = false;
        if (table.rows[k].vel < cum - 1e-6) table.superadditive = false;
    }
    return table;
}

}  // namespace dcg
