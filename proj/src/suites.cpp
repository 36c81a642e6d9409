#include "dcg/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "dcg/error.hpp"
#include "dcg/flow.hpp"
#include "dcg/harmonic.hpp"
#include "dcg/hyperbolic.hpp"
#include "dcg/io.hpp"
#include "dcg/layout.hpp"
#include "dcg/network.hpp"
#include "dcg/random.hpp"

namespace dcg {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

const double kJacobianMinAngle = 0.15;

namespace {

struct Outcome {
    std::vector<CheckRecord> checks;
    /// (file suffix, contents) written when a check fails.
    std::vector<std::pair<std::string, std::string>> artifacts;
    bool error = false;
};

using InstanceFn = std::function<Outcome(int, SplitMix64&)>;

void check(Outcome& o, const std::string& name, bool pass, double value, double limit, std::string detail = {}) {
    CheckRecord r;
    r.name = name;
    r.pass = pass;
    r.value = value;
    r.limit = limit;
    r.detail = std::move(detail);
    o.checks.push_back(std::move(r));
}

void attach_mesh(Outcome& o, const Triangulation& tri, const PlanarEmbedding* phi, const PLMetric* l,
                 bool poincare = false, const std::string& tag = "mesh") {
    MeshFile f;
    f.tri = tri;
    if (phi) f.positions = *phi;
    if (l) f.lengths = *l;
    f.poincare = poincare;
    o.artifacts.emplace_back(tag + ".json", mesh_to_json(f));
}

struct Moebius {
    Point a, b, c, d;
    Point operator()(Point z) const { return (a * z + b) / (c * z + d); }
    double log_deriv(Point z) const { return std::log(std::abs(a * d - b * c) / std::norm(c * z + d)); }
};

Mesh random_fan(SplitMix64& rng, int k, double rmin, double rmax, double jitter, Point center = {}) {
    std::vector<Point> pos{center};
    std::vector<Face> faces;
    for (int j = 0; j < k; ++j) {
        const double a = 2 * kPi * (j + rng.uniform(-jitter, jitter)) / k;
        pos.push_back(center + std::polar(rng.uniform(rmin, rmax), a));
        faces.push_back({0, 1 + j, 1 + (j + 1) % k});
    }
    return Mesh{Triangulation::build(faces), PlanarEmbedding{pos}};
}

// --- jacobian ---------------------------------------------------------------

Outcome jacobian_instance(int, SplitMix64& rng) {
    Outcome o;
    auto opts = regular_disk_options();
    // Near-flat corners make the third derivative of K large enough that the
    // h^2 truncation of central differences alone exceeds the tolerance.
    opts.min_angle = kJacobianMinAngle;
    auto m = gen_random_delaunay_disk(50, rng.next(), opts);
    const PLMetric l = metric_from_embedding(m.tri, m.pos);
    // u is a function of the positions so the mesh file alone replays the case.
    std::vector<double> u(m.tri.num_vertices());
    for (int v = 0; v < m.tri.num_vertices(); ++v) u[v] = 0.005 * std::sin(7 * m.pos[v].real() + 3 * m.pos[v].imag());
    const auto jac = curvature_jacobian(m.tri, l, u);
    const Eigen::MatrixXd dense(jac);
    constexpr double h = 1e-5;
    double worst = 0.0;
    for (int c = 0; c < m.tri.num_vertices(); ++c) {
        auto up = u, dn = u;
        up[c] += h;
        dn[c] -= h;
        const auto kp = curvature(m.tri, conformal_change(m.tri, l, up));
        const auto kd = curvature(m.tri, conformal_change(m.tri, l, dn));
        for (int i : m.tri.interior_vertices())
            worst = std::max(worst, std::abs((kp[i] - kd[i]) / (2 * h) - dense(i, c)));
    }
    check(o, "fd_error", worst <= 1e-6, worst, 1e-6);
    if (worst > 1e-6) attach_mesh(o, m.tri, &m.pos, nullptr);
    return o;
}

// --- max-principle ----------------------------------------------------------

// Center value making the 1-ring flat with the rim values fixed; empty when
// no sign change is found in a valid bracket.
std::optional<double> flat_center(const Triangulation& tri, const PLMetric& l, std::vector<double> u) {
    double lo_u = u[1], hi_u = u[1];
    for (std::size_t j = 1; j < u.size(); ++j) {
        lo_u = std::min(lo_u, u[j]);
        hi_u = std::max(hi_u, u[j]);
    }
    auto k_at = [&](double c) -> std::optional<double> {
        u[0] = c;
        try {
            return curvature(tri, conformal_change(tri, l, u))[0];
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    const double mid = 0.5 * (lo_u + hi_u);
    // Wide bracket around the rim range, pulled in until the triangles are valid.
    double lo = lo_u - 1.0, hi = hi_u + 1.0;
    auto klo = k_at(lo), khi = k_at(hi);
    for (int t = 0; t < 60 && !klo; ++t) klo = k_at(lo = 0.5 * (lo + mid));
    for (int t = 0; t < 60 && !khi; ++t) khi = k_at(hi = 0.5 * (hi + mid));
    if (!klo || !khi || !(*klo < 0 && *khi > 0)) return std::nullopt;
    for (int it = 0; it < 200 && hi - lo > 1e-16 * (1 + std::abs(lo)); ++it) {
        const double c = 0.5 * (lo + hi);
        const auto kc = k_at(c);
        if (!kc) return std::nullopt;
        (*kc < 0 ? lo : hi) = c;
    }
    return 0.5 * (lo + hi);
}

Outcome max_principle_instance(int, SplitMix64& rng) {
    Outcome o;
    // Delaunay 1-ring conformal pair, built by developing u * l.
    for (int attempt = 0; attempt < 200; ++attempt) {
        auto fan = random_fan(rng, rng.uniform_int(5, 8), 0.7, 1.3, 0.25);
        const PLMetric l = metric_from_embedding(fan.tri, fan.pos);
        std::vector<double> u(fan.tri.num_vertices());
        for (std::size_t j = 1; j < u.size(); ++j) u[j] = rng.uniform(-0.3, 0.3);
        if (!delaunay_check(fan.tri, l).is_delaunay()) continue;
        const auto c = flat_center(fan.tri, l, u);
        if (!c) continue;
        u[0] = *c;
        const PLMetric l2 = conformal_change(fan.tri, l, u);
        PlanarEmbedding phi2;
        try {
            phi2 = develop_flat_metric(fan.tri, l2);
        } catch (const Error&) {
            continue;
        }
        if (!delaunay_check(fan.tri, l2).is_delaunay()) continue;
        const double hi = *std::max_element(u.begin() + 1, u.end());
        const double lo = *std::min_element(u.begin() + 1, u.end());
        const bool ok = u[0] <= hi + 1e-10 && u[0] >= lo - 1e-10;
        check(o, "ring_max", u[0] <= hi + 1e-10, u[0] - hi, 1e-10);
        check(o, "ring_min", u[0] >= lo - 1e-10, lo - u[0], 1e-10);
        if (!ok) attach_mesh(o, fan.tri, &fan.pos, &l2, false, "ring");
        break;
    }
    if (o.checks.empty()) check(o, "ring_generated", false, 0, 0, "no Delaunay pair in 200 attempts");

    // Dirichlet problem with cotangent weights on a random Delaunay disk.
    auto m = gen_random_delaunay_disk(rng.uniform_int(40, 120), rng.next(), regular_disk_options());
    const auto g = WeightedGraph::from_triangulation(m.tri, cot_weights(m.tri, metric_from_embedding(m.tri, m.pos)));
    std::vector<double> f(m.tri.num_vertices());
    double fmax = 0.0;
    for (int v = 0; v < m.tri.num_vertices(); ++v) {
        f[v] = std::cos(3 * std::arg(m.pos[v])) + m.pos[v].real();
        fmax = std::max(fmax, std::abs(f[v]));
    }
    const auto interior = m.tri.interior_vertices();
    const auto u = dirichlet_solve(g, interior, f);
    const double res = harmonic_residual(g, interior, u);
    const auto mp = max_principle_check(g, interior, u);
    check(o, "dirichlet_residual", res <= 1e-10 * (1 + fmax), res, 1e-10 * (1 + fmax));
    check(o, "dirichlet_enclosure", mp.ok, mp.excess, 1e-10);
    if (!mp.ok || res > 1e-10 * (1 + fmax)) attach_mesh(o, m.tri, &m.pos, nullptr, false, "dirichlet");
    return o;
}

// --- hyperbolic -------------------------------------------------------------

Outcome hyperbolic_instance(int, SplitMix64& rng) {
    Outcome o;
    // Factor conversion on a Moebius image of a small fan.
    for (int attempt = 0;; ++attempt) {
        if (attempt == 200) {
            check(o, "conversion_generated", false, 0, 0, "no in-disk fan pair");
            break;
        }
        auto fan = random_fan(rng, rng.uniform_int(5, 8), 0.05, 0.15, 0.25, rng.in_disk(0.5));
        const Moebius mb{Point(rng.uniform(0.5, 0.9), rng.uniform(-0.1, 0.1)),
                         Point(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2)),
                         Point(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4)), Point(1, 0)};
        PlanarEmbedding img = fan.pos;
        bool inside = true;
        for (auto& z : img.z) {
            z = mb(z);
            inside = inside && std::abs(z) < 0.95;
        }
        if (!inside) continue;
        std::vector<double> u(fan.pos.size());
        for (std::size_t v = 0; v < u.size(); ++v) u[v] = mb.log_deriv(fan.pos[v]);
        const auto uh = convert_factor_euclidean_to_hyperbolic(u, fan.pos, img);
        const PHMetric lh = ph_from_disk_embedding(fan.tri, fan.pos);
        const PHMetric lh2 = ph_from_disk_embedding(fan.tri, img);
        double worst = 0.0;
        for (int e = 0; e < fan.tri.num_edges(); ++e) {
            const Edge& ed = fan.tri.edge(e);
            const double lhs = std::log(std::sinh(lh2.length[e] / 2)) - std::log(std::sinh(lh.length[e] / 2));
            worst = std::max(worst, std::abs(lhs - 0.5 * (uh[ed.a] + uh[ed.b])));
        }
        check(o, "conversion_residual", worst <= 1e-9, worst, 1e-9);
        if (worst > 1e-9) {
            attach_mesh(o, fan.tri, &fan.pos, nullptr, true, "fan");
            attach_mesh(o, fan.tri, &img, nullptr, true, "image");
        }
        break;
    }

    // Induced hyperbolic 1-ring under the spoke hypothesis.
    auto fan = random_fan(rng, rng.uniform_int(5, 8), 0.6, 1.0, 0.25);
    const double min_angle = min_corner(fan.tri, corner_angles(fan.tri, metric_from_embedding(fan.tri, fan.pos))).angle;
    const double eps = std::min(kPi / 3, min_angle) * (1 - 1e-9);
    const Point z0 = rng.in_disk(0.9);
    double spoke = 0.0;
    for (std::size_t j = 1; j < fan.pos.size(); ++j) spoke = std::max(spoke, std::abs(fan.pos[j]));
    const double target =
        rng.uniform(0.3, 1.0) * std::min((1 - std::norm(z0)) * std::sin(eps), 0.95 * (1 - std::abs(z0)));
    PlanarEmbedding phi = fan.pos;
    for (auto& z : phi.z) z = z0 + z * (target / spoke);
    const auto r = induced_hyp_embedding(fan.tri, phi, 0, eps);
    const bool feasible = r.status == InducedStatus::Feasible;
    check(o, "ring_feasible", feasible, static_cast<double>(r.violating_spokes.size()), 0);
    if (feasible) {
        double worst_turn = 0.0;
        bool in_range = true;
        for (double t : r.turns) {
            in_range = in_range && t > 0 && t < kPi;
            worst_turn = std::max(worst_turn, t);
        }
        const double err = std::abs(r.turn_sum - 2 * kPi);
        check(o, "turns_in_range", in_range, worst_turn, kPi);
        check(o, "turn_sum", err <= 1e-8, err, 1e-8);
        if (!in_range || err > 1e-8) attach_mesh(o, fan.tri, &phi, nullptr, true, "ring");
    } else {
        attach_mesh(o, fan.tri, &phi, nullptr, true, "ring");
    }
    return o;
}

// --- flow ---------------------------------------------------------------------

Outcome flow_instance(int id, SplitMix64& rng) {
    Outcome o;
    const int radius = 2 + id % 3;
    auto m = gen_hex_patch(radius);
    const PLMetric l = metric_from_embedding(m.tri, m.pos);
    std::vector<double> v(m.tri.num_vertices(), 0.0);
    auto bd = m.tri.boundary_vertices();
    std::sort(bd.begin(), bd.end(), [&](int a, int b) { return std::arg(m.pos[a]) < std::arg(m.pos[b]); });
    for (std::size_t k = 0; k < bd.size(); ++k) v[bd[k]] = id < 3 ? (k % 2 ? -1.0 : 1.0) : rng.uniform(-1, 1);
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));

    const double t_end = 0.05;
    const auto tr = conformal_flow(m.tri, l, v, t_end, 0.25);
    double flat = 0.0, speed_excess = -std::numeric_limits<double>::infinity(), lip = -1.0;
    for (const auto& s : tr.states) {
        flat = std::max(flat, s.flatness);
        speed_excess = std::max(speed_excess, s.interior_speed - s.boundary_speed);
        double um = 0.0;
        for (double x : s.u) um = std::max(um, std::abs(x));
        lip = std::max(lip, um - s.time * vmax);
    }
    check(o, "flatness", flat <= 1e-8, flat, 1e-8);
    check(o, "max_principle_speed", speed_excess <= 1e-10, speed_excess, 1e-10);
    check(o, "lipschitz", lip <= 1e-8, lip, 1e-8);

    FlowOptions raw;
    raw.project = false;
    std::vector<std::vector<double>> ends;
    for (double h : {0.01, 0.005, 0.0025}) {
        raw.step = h;
        ends.push_back(conformal_flow(m.tri, l, v, t_end, 0.25, raw).states.back().u);
    }
    auto diff = [](const std::vector<double>& a, const std::vector<double>& b) {
        double d = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
        return d;
    };
    const double ratio = diff(ends[0], ends[1]) / diff(ends[1], ends[2]);
    check(o, "order_ratio", ratio >= 12 && ratio <= 20, ratio, 16, "expected in [12, 20]");
    if (!o.checks.empty() && std::any_of(o.checks.begin(), o.checks.end(), [](auto& c) { return !c.pass; })) {
        std::ostringstream csv;
        csv << "vertex,velocity\n";
        for (std::size_t i = 0; i < v.size(); ++i) csv << i << ',' << format_double(v[i]) << '\n';
        attach_mesh(o, m.tri, &m.pos, nullptr);
        o.artifacts.emplace_back("velocity.csv", csv.str());
    }
    return o;
}

// --- vel ----------------------------------------------------------------------

Outcome vel_instance(int id, SplitMix64& rng) {
    Outcome o;
    // Conductance duality on a random weighted 5x5 grid, left column to right column.
    {
        std::vector<Edge> edges;
        std::vector<double> mu;
        for (int r = 0; r < 5; ++r)
            for (int c = 0; c < 5; ++c) {
                const int v = 5 * r + c;
                if (c + 1 < 5) edges.emplace_back(v, v + 1), mu.push_back(rng.uniform(0.1, 2.0));
                if (r + 1 < 5) edges.emplace_back(v, v + 5), mu.push_back(rng.uniform(0.1, 2.0));
            }
        const auto g = WeightedGraph::from_edges(25, edges, mu);
        const std::vector<int> left{0, 5, 10, 15, 20}, right{4, 9, 14, 19, 24};
        const double prod = edge_conductance(g, left, right) * effective_resistance(g, left, right);
        check(o, "cond_res_duality", std::abs(prod - 1) <= 1e-6, std::abs(prod - 1), 1e-6);
        if (std::abs(prod - 1) > 1e-6) {
            std::ostringstream csv;
            write_graph_csv(csv, g);
            o.artifacts.emplace_back("grid.csv", csv.str());
        }
    }
    // He inequality on a cotangent-weighted Delaunay disk.
    {
        auto m = gen_random_delaunay_disk(60, rng.next(), regular_disk_options());
        const auto g = WeightedGraph::from_triangulation(m.tri, cot_weights(m.tri, metric_from_embedding(m.tri, m.pos)));
        int a = 0;
        for (int v = 0; v < m.tri.num_vertices(); ++v)
            if (std::abs(m.pos[v]) < std::abs(m.pos[a])) a = v;
        const std::vector<int> v1{a};
        const auto bd = m.tri.boundary_vertices();
        const auto he = he_inequality_check(g, v1, bd, max_vertex_weight_sum(g));
        check(o, "he_slack", he.slack >= 0, he.slack, 0);
        if (he.slack < 0) attach_mesh(o, m.tri, &m.pos, nullptr);
    }
    if (id == 0) {
        const auto path = WeightedGraph::from_edges(3, {Edge(0, 1), Edge(1, 2)}, {1.0, 1.0});
        const std::vector<int> a{0}, b{2};
        const double mod = vertex_modulus(path, a, b).objective;
        check(o, "path_modulus", std::abs(mod - 1.0 / 3) <= 1e-8, mod, 1.0 / 3);

        auto hex = gen_hex_patch(8);
        const auto ring = hex_ring_index(8);
        std::vector<std::vector<int>> sets;
        for (int r : {0, 2, 3, 5, 6, 8}) {
            sets.emplace_back();
            for (std::size_t v = 0; v < ring.size(); ++v)
                if (ring[v] == r) sets.back().push_back(static_cast<int>(v));
        }
        const auto add = vel_additivity_check(WeightedGraph::unit(hex.tri), sets);
        check(o, "additivity_slack", add.slack >= -1e-6, add.slack, -1e-6);

        auto big = gen_hex_patch(20);
        const auto growth = parabolicity_growth(big.tri, big.pos, 3);
        check(o, "growth_monotone", growth.monotone, growth.rows.back().vel, growth.rows.front().vel);
    }
    return o;
}

// --- schwarz ------------------------------------------------------------------

Outcome schwarz_instance(int, SplitMix64& rng) {
    Outcome o;
    const double eps = kPi / 6;
    for (int attempt = 0; attempt < 50; ++attempt) {
        const int radius = rng.uniform_int(4, 6);
        auto m = gen_hex_patch(radius);
        for (std::size_t v = 1; v < m.pos.size(); ++v)
            m.pos[v] += Point(rng.uniform(-0.08, 0.08), rng.uniform(-0.08, 0.08));
        const PLMetric l = metric_from_embedding(m.tri, m.pos);
        std::vector<double> f(m.tri.num_vertices(), 0.0);
        const int k = rng.uniform_int(1, 3);
        const double amp = rng.uniform(0.05, 0.25) / (1 + attempt), phase = rng.uniform(0, 2 * kPi);
        const double shift = rng.uniform(-1, 1);
        for (int b : m.tri.boundary_vertices()) f[b] = amp * std::sin(k * std::arg(m.pos[b]) + phase) + shift;

        PLMetric l2;
        PlanarEmbedding phi2;
        try {
            const auto y = yamabe_solve(m.tri, l, f);
            l2 = conformal_change(m.tri, l, y.u);
            phi2 = develop_flat_metric(m.tri, l2, Anchor{0, m.tri.neighbors(0)[0], {}, rng.uniform(0, 2 * kPi)});
        } catch (const Error&) {
            continue;
        }
        double r = 0.0;
        for (Point z : m.pos.z) r = std::max(r, std::abs(z));
        const double r2 = distance_to_boundary(m.tri, phi2, {0, 0});
        SchwarzResult s;
        try {
            s = schwarz_verify(m.tri, m.pos, phi2, r, r2, eps);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::HypothesisViolated) continue;
            if (e.code() != ErrorCode::TheoremViolated) throw;
            check(o, "margin", false, -1, 0, e.what());
            attach_mesh(o, m.tri, &m.pos, &l2);
            return o;
        }
        check(o, "margin", s.margin >= 0, s.margin, 0);
        check(o, "fit_residual", s.fit_residual <= 1e-9, s.fit_residual, 1e-9);
        if (s.margin < 0) attach_mesh(o, m.tri, &m.pos, &l2);
        return o;
    }
    check(o, "hypotheses", false, 0, 0, "no instance satisfied the hypotheses in 50 attempts");
    return o;
}

struct SuiteDef {
    std::string name;
    int instances;
    InstanceFn fn;
};

const std::vector<SuiteDef>& registry() {
    static const std::vector<SuiteDef> defs{
        {"jacobian", 100, jacobian_instance},   {"max-principle", 200, max_principle_instance},
        {"hyperbolic", 100, hyperbolic_instance}, {"flow", 3, flow_instance},
        {"vel", 50, vel_instance},             {"schwarz", 50, schwarz_instance},
    };
    return defs;
}

const SuiteDef* find_suite(const std::string& name) {
    for (const auto& d : registry())
        if (d.name == name) return &d;
    return nullptr;
}

void run_one(const SuiteDef& def, const SuiteOptions& opts, SuiteReport& report) {
    const int n = opts.instances > 0 ? opts.instances : def.instances;
    SplitMix64 base(opts.seed);
    std::vector<SplitMix64> streams;
    streams.reserve(n);
    for (int i = 0; i < n; ++i) streams.push_back(base.split());
    std::vector<Outcome> out(n);

#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, opts.jobs))
    for (int i = 0; i < n; ++i) {
        try {
            out[i] = def.fn(i, streams[i]);
        } catch (const std::exception& e) {
            out[i] = Outcome{};
            out[i].error = true;
            check(out[i], "completed", false, 0, 0, e.what());
        }
    }

    for (int i = 0; i < n; ++i) {
        auto& o = out[i];
        const bool failed = o.error || std::any_of(o.checks.begin(), o.checks.end(), [](auto& c) { return !c.pass; });
        std::string artifact;
        if (failed && !opts.artifact_dir.empty() && !o.artifacts.empty()) {
            std::filesystem::create_directories(opts.artifact_dir);
            for (const auto& [suffix, text] : o.artifacts) {
                const auto path = (std::filesystem::path(opts.artifact_dir) /
                                   (def.name + "_" + std::to_string(opts.seed) + "_" + std::to_string(i) + "_" + suffix))
                                      .string();
                write_text(path, text);
                artifact += (artifact.empty() ? "" : ";") + path;
            }
        }
        if (o.error) ++report.errors;
        for (auto& c : o.checks) {
            c.suite = def.name;
            c.instance = i;
            if (!c.pass) {
                ++report.failures;
                c.artifact = artifact;
            }
            report.checks.push_back(std::move(c));
        }
    }
    report.instances += n;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& d : registry()) v.push_back(d.name);
        return v;
    }();
    return names;
}

bool is_suite(const std::string& name) { return name == "all" || find_suite(name) != nullptr; }

int default_instances(const std::string& name) {
    const SuiteDef* d = find_suite(name);
    if (!d) throw Error(ErrorCode::InvalidArgument, "unknown suite " + name);
    return d->instances;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
    if (!is_suite(name)) throw Error(ErrorCode::InvalidArgument, "unknown suite " + name);
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport report;
    report.suite = name;
    report.seed = opts.seed;
    if (name == "all") {
        for (const auto& d : registry()) run_one(d, opts, report);
    } else {
        run_one(*find_suite(name), opts, report);
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::string suite_report_json(const SuiteReport& report, bool stable) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["suite"] = report.suite;
    j["seed"] = report.seed;
    j["instances"] = report.instances;
    j["passed"] = report.passed();
    j["failures"] = report.failures;
    j["errors"] = report.errors;

    // Per check name: count, failures and the extreme measured value.
    std::map<std::string, ordered_json> summary;
    for (const auto& c : report.checks) {
        auto& s = summary[c.suite + "/" + c.name];
        if (s.is_null()) s = {{"count", 0}, {"failures", 0}, {"min", c.value}, {"max", c.value}, {"limit", c.limit}};
        s["count"] = s["count"].get<int>() + 1;
        if (!c.pass) s["failures"] = s["failures"].get<int>() + 1;
        s["min"] = std::min(s["min"].get<double>(), c.value);
        s["max"] = std::max(s["max"].get<double>(), c.value);
    }
    ordered_json sj = ordered_json::object();
    for (auto& [k, v] : summary) sj[k] = v;
    j["summary"] = std::move(sj);

    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks) {
        ordered_json cj{{"suite", c.suite}, {"instance", c.instance}, {"check", c.name},
                        {"pass", c.pass},   {"value", c.value},       {"limit", c.limit}};
        if (!c.detail.empty()) cj["detail"] = c.detail;
        if (!c.artifact.empty()) cj["artifact"] = c.artifact;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    if (!stable) j["timing"] = {{"wall_seconds", report.wall_seconds}};
    return j.dump(1) + "\n";
}

}  // namespace dcg
