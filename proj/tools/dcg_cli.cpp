// dcg: command-line front end for the discrete conformal geometry library.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcg/error.hpp"
#include "dcg/flow.hpp"
#include "dcg/harmonic.hpp"
#include "dcg/io.hpp"
#include "dcg/layout.hpp"
#include "dcg/network.hpp"
#include "dcg/suites.hpp"

using nlohmann::ordered_json;

namespace {

enum Exit { kPass = 0, kCheckFailure = 1, kUsage = 2, kNumerical = 3 };

int exit_code_for(dcg::ErrorCode c) {
    using dcg::ErrorCode;
    switch (c) {
        case ErrorCode::HypothesisViolated:
        case ErrorCode::TheoremViolated:
        case ErrorCode::NotConformalPair:
        case ErrorCode::ConditionViolated:
        case ErrorCode::NotHarmonic:
        case ErrorCode::SeparationViolated:
        case ErrorCode::AngleHypothesisViolated:
            return kCheckFailure;
        case ErrorCode::NumericalFailure:
        case ErrorCode::SingularSystem:
        case ErrorCode::LeftDomain:
        case ErrorCode::WeightDegenerate:
        case ErrorCode::StepFailure:
        case ErrorCode::NoConvergence:
        case ErrorCode::TriangleCollapse:
        case ErrorCode::IterationLimit:
            return kNumerical;
        default:
            return kUsage;
    }
}

std::uint64_t default_seed() {
    if (const char* s = std::getenv("DCG_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw dcg::Error(dcg::ErrorCode::InvalidArgument, std::string("DCG_SEED is not an integer: ") + s);
        }
    }
    return 1;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        dcg::write_text(path, text);
}

std::string dump(const ordered_json& j) { return j.dump(1) + "\n"; }

dcg::PLMetric mesh_metric(const dcg::MeshFile& m) {
    if (m.lengths) return *m.lengths;
    if (m.positions) {
        if (m.poincare) throw dcg::Error(dcg::ErrorCode::InvalidArgument, "Poincare positions need explicit lengths");
        return dcg::metric_from_embedding(m.tri, *m.positions);
    }
    throw dcg::Error(dcg::ErrorCode::InvalidArgument, "mesh has neither positions nor lengths");
}

const dcg::PlanarEmbedding& need_positions(const dcg::MeshFile& m) {
    if (!m.positions) throw dcg::Error(dcg::ErrorCode::InvalidArgument, "mesh has no positions");
    return *m.positions;
}

std::vector<double> read_values(const std::string& path, int n) {
    std::istringstream in(dcg::read_text(path));
    return dcg::read_vertex_csv(in, n);
}

// Vertex set tokens: boundary, interior, center, r<X, r>=X, or a comma list of ids.
std::vector<int> parse_vertex_set(const std::string& tok, const dcg::Triangulation& tri,
                                  const dcg::PlanarEmbedding* phi) {
    auto need_phi = [&] {
        if (!phi) throw dcg::Error(dcg::ErrorCode::InvalidArgument, "vertex set '" + tok + "' needs positions");
    };
    std::vector<int> out;
    if (tok == "boundary") return tri.boundary_vertices();
    if (tok == "interior") return tri.interior_vertices();
    if (tok == "center") {
        need_phi();
        int best = -1;
        for (int v : tri.used_vertices())
            if (best < 0 || std::abs((*phi)[v]) < std::abs((*phi)[best])) best = v;
        return {best};
    }
    if (tok.rfind("r<", 0) == 0 || tok.rfind("r>=", 0) == 0) {
        need_phi();
        const bool inner = tok[1] == '<';
        double r = 0;
        try {
            r = std::stod(tok.substr(inner ? 2 : 3));
        } catch (const std::exception&) {
            throw dcg::Error(dcg::ErrorCode::InvalidArgument, "bad radius in vertex set " + tok);
        }
        for (int v : tri.used_vertices())
            if ((std::abs((*phi)[v]) < r) == inner) out.push_back(v);
        return out;
    }
    std::istringstream ss(tok);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        int v = -1;
        try {
            v = std::stoi(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != item.size() || v < 0 || v >= tri.num_vertices())
            throw dcg::Error(dcg::ErrorCode::InvalidArgument, "bad vertex set item '" + item + "'");
        out.push_back(v);
    }
    return out;
}

ordered_json report_analysis(const dcg::Triangulation& tri, const dcg::PLMetric& l) {
    const auto angles = dcg::corner_angles(tri, l);
    const auto k = dcg::curvature(tri, angles);
    const auto w = dcg::cot_weights(tri, angles);
    const auto d = dcg::delaunay_check(tri, l);
    const auto mc = dcg::min_corner(tri, angles);
    ordered_json j;
    j["vertices"] = tri.num_vertices();
    j["edges"] = tri.num_edges();
    j["faces"] = tri.num_faces();
    j["interior_vertices"] = tri.interior_vertices().size();
    j["delaunay"] = dcg::to_string(d.cls);
    j["epsilon_star"] = d.epsilon_star;
    j["max_angle_sum"] = d.max_angle_sum;
    if (d.witness_edge >= 0)
        j["witness_edge"] = {tri.edge(d.witness_edge).a, tri.edge(d.witness_edge).b};
    j["min_angle"] = {{"face", mc.face}, {"vertex", mc.vertex}, {"angle", mc.angle}};
    j["max_interior_abs_K"] = dcg::max_interior_curvature(tri, k);
    j["K"] = k;
    ordered_json mu = ordered_json::array();
    for (int e = 0; e < tri.num_edges(); ++e) mu.push_back({tri.edge(e).a, tri.edge(e).b, w.mu[e]});
    j["mu"] = std::move(mu);
    return j;
}

dcg::WeightedGraph graph_for(const std::string& graph_csv, const std::optional<dcg::MeshFile>& mesh,
                             const std::string& weights) {
    if (!graph_csv.empty()) {
        std::istringstream in(dcg::read_text(graph_csv));
        return dcg::read_graph_csv(in);
    }
    if (weights == "unit") return dcg::WeightedGraph::unit(mesh->tri);
    if (weights == "cot") return dcg::WeightedGraph::from_triangulation(mesh->tri, dcg::cot_weights(mesh->tri, mesh_metric(*mesh)));
    throw dcg::Error(dcg::ErrorCode::InvalidArgument, "weights must be unit or cot");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete conformal geometry toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "dcg 1.0");

    std::string out_path;
    int exit_code = kPass;

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a mesh");
    gen->require_subcommand(1);
    auto* gen_hex = gen->add_subcommand("hex", "Hexagonal lattice patch");
    int hex_radius = 3;
    gen_hex->add_option("--radius", hex_radius, "Combinatorial radius (>= 1)");
    gen_hex->add_option("-o,--output", out_path, "Output mesh JSON (stdout if omitted)");
    auto* gen_rand = gen->add_subcommand("random-delaunay", "Delaunay triangulation of random points in the unit disk");
    int rand_n = 50;
    std::optional<std::uint64_t> rand_seed;
    bool rand_regular = false;
    gen_rand->add_option("--n", rand_n, "Number of points (>= 3)");
    gen_rand->add_option("--seed", rand_seed, "Seed (default: DCG_SEED or 1)");
    gen_rand->add_flag("--regular", rand_regular, "Trim flat hull triangles and reject tiny angles");
    gen_rand->add_option("-o,--output", out_path, "Output mesh JSON");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Angles, curvature, cotangent weights and Delaunay class");
    std::string mesh_path, k_csv, mu_csv;
    analyze->add_option("mesh", mesh_path, "Mesh JSON")->required();
    analyze->add_option("-o,--output", out_path, "Report JSON");
    analyze->add_option("--curvature-csv", k_csv, "Write vertex,K");
    analyze->add_option("--weights-csv", mu_csv, "Write i,j,mu");

    // conformal
    auto* conformal = app.add_subcommand("conformal", "Apply a conformal factor, or recover one between two meshes");
    std::string factor_csv, target_path;
    conformal->add_option("mesh", mesh_path, "Mesh JSON")->required();
    auto* opt_factor = conformal->add_option("--factor", factor_csv, "CSV vertex,u to apply");
    conformal->add_option("--target", target_path, "Second mesh; recover u with l2 = u * l")->excludes(opt_factor);
    conformal->add_option("-o,--output", out_path, "Output mesh JSON (apply) or report JSON (recover)");

    // flow
    auto* flow = app.add_subcommand("flow", "Conformal flow with prescribed boundary velocity");
    std::string velocity = "alternating";
    double t_end = 0.05, delta = 0.25, step = 0.0;
    bool no_project = false;
    flow->add_option("mesh", mesh_path, "Mesh JSON")->required();
    flow->add_option("--velocity", velocity, "alternating, dipole, or a CSV vertex,v");
    flow->add_option("--t-end", t_end, "Final time");
    flow->add_option("--delta", delta, "Delaunay margin defining the domain");
    flow->add_option("--step", step, "RK4 step (0 = automatic)");
    flow->add_flag("--no-project", no_project, "Skip the Newton projection onto K = 0");
    flow->add_option("-o,--output", out_path, "Trajectory CSV t,vertex,u,K");

    // yamabe
    auto* yamabe = app.add_subcommand("yamabe", "Flat metric with prescribed boundary factor");
    std::string boundary = "zero";
    double amplitude = 0.1;
    yamabe->add_option("mesh", mesh_path, "Mesh JSON")->required();
    yamabe->add_option("--boundary", boundary, "zero, constant, dipole, or a CSV vertex,u");
    yamabe->add_option("--amplitude", amplitude, "Profile amplitude");
    yamabe->add_option("-o,--output", out_path, "Output mesh JSON with the new lengths and a developed layout");

    // vel / resistance
    std::string graph_csv, from_set, to_set, weights = "unit";
    auto* velc = app.add_subcommand("vel", "Vertex extremal length between two vertex sets");
    auto* vel_in = velc->add_option("mesh", mesh_path, "Mesh JSON");
    velc->add_option("--graph", graph_csv, "Graph CSV i,j,mu instead of a mesh")->excludes(vel_in);
    velc->add_option("--from", from_set, "Vertex set V1")->required();
    velc->add_option("--to", to_set, "Vertex set V2")->required();
    velc->add_option("-o,--output", out_path, "Report JSON");

    auto* res = app.add_subcommand("resistance", "Effective resistance and conductance between two vertex sets");
    auto* res_in = res->add_option("mesh", mesh_path, "Mesh JSON");
    res->add_option("--graph", graph_csv, "Graph CSV i,j,mu instead of a mesh")->excludes(res_in);
    res->add_option("--weights", weights, "unit or cot (meshes only)");
    res->add_option("--from", from_set, "Vertex set V1")->required();
    res->add_option("--to", to_set, "Vertex set V2")->required();
    res->add_option("-o,--output", out_path, "Report JSON");

    // schwarz
    auto* schwarz = app.add_subcommand("schwarz", "Discrete Schwarz bound for a flat conformal pair");
    std::string image_path;
    std::optional<double> sr, sr2;
    double eps = std::numbers::pi / 6;
    schwarz->add_option("mesh", mesh_path, "Source mesh JSON with positions")->required();
    schwarz->add_option("image", image_path, "Image mesh JSON with positions")->required();
    schwarz->add_option("--r", sr, "Radius containing the source (default: max |z|)");
    schwarz->add_option("--r2", sr2, "Radius of a disk about 0 inside the image (default: distance to its boundary)");
    schwarz->add_option("--eps", eps, "Angle bound, at most pi/6");
    schwarz->add_option("-o,--output", out_path, "Report JSON");

    // suite
    auto* suite = app.add_subcommand("suite", "Run a verification suite");
    std::string suite_name;
    dcg::SuiteOptions sopts;
    std::optional<std::uint64_t> suite_seed;
    bool stable = false;
    suite->add_option("name", suite_name, "all, jacobian, max-principle, hyperbolic, flow, vel, schwarz")->required();
    suite->add_option("--instances", sopts.instances, "Instance count (0 = suite default)");
    suite->add_option("--seed", suite_seed, "Seed (default: DCG_SEED or 1)");
    suite->add_option("--jobs", sopts.jobs, "Parallel instances");
    suite->add_option("--artifacts", sopts.artifact_dir, "Directory for failing-instance replay files");
    suite->add_flag("--stable-output", stable, "Omit timing so reports compare byte for byte");
    suite->add_option("-o,--output", out_path, "Report JSON");

    // render-svg
    auto* svg = app.add_subcommand("render-svg", "Draw a mesh");
    std::string values_csv;
    dcg::SvgOptions svg_opts;
    svg->add_option("mesh", mesh_path, "Mesh JSON")->required();
    svg->add_option("--values", values_csv, "CSV vertex,value used for face colors");
    svg->add_option("--width", svg_opts.width, "Image width in pixels");
    svg->add_flag("--unit-circle", svg_opts.unit_circle, "Draw the unit circle");
    svg->add_option("-o,--output", out_path, "SVG file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*gen_hex) {
            if (hex_radius < 1) throw dcg::Error(dcg::ErrorCode::InvalidArgument, "--radius must be at least 1");
            auto m = dcg::gen_hex_patch(hex_radius);
            emit(dcg::mesh_to_json({m.tri, m.pos, std::nullopt, false}), out_path);
        } else if (*gen_rand) {
            if (rand_n < 3) throw dcg::Error(dcg::ErrorCode::InvalidArgument, "--n must be at least 3");
            auto m = dcg::gen_random_delaunay_disk(rand_n, rand_seed.value_or(default_seed()),
                                                   rand_regular ? dcg::regular_disk_options() : dcg::RandomDiskOptions{});
            emit(dcg::mesh_to_json({m.tri, m.pos, std::nullopt, false}), out_path);
        } else if (*analyze) {
            const auto m = dcg::read_mesh(mesh_path);
            const auto l = mesh_metric(m);
            const auto j = report_analysis(m.tri, l);
            if (!k_csv.empty()) {
                std::ostringstream s;
                dcg::write_curvature_csv(s, j["K"].get<std::vector<double>>());
                dcg::write_text(k_csv, s.str());
            }
            if (!mu_csv.empty()) {
                std::ostringstream s;
                dcg::write_weights_csv(s, m.tri, dcg::cot_weights(m.tri, l));
                dcg::write_text(mu_csv, s.str());
            }
            emit(dump(j), out_path);
        } else if (*conformal) {
            const auto m = dcg::read_mesh(mesh_path);
            const auto l = mesh_metric(m);
            if (!target_path.empty()) {
                const auto m2 = dcg::read_mesh(target_path);
                if (!(m2.tri == m.tri))
                    throw dcg::Error(dcg::ErrorCode::InvalidArgument, "meshes have different combinatorics");
                const auto fit = dcg::recover_conformal_factor(m.tri, l, mesh_metric(m2));
                ordered_json j{{"conformal", true}, {"residual", fit.residual}, {"u", fit.u}};
                emit(dump(j), out_path);
            } else {
                if (factor_csv.empty()) throw dcg::Error(dcg::ErrorCode::InvalidArgument, "give --factor or --target");
                const auto u = read_values(factor_csv, m.tri.num_vertices());
                dcg::MeshFile out{m.tri, std::nullopt, dcg::conformal_change(m.tri, l, u), false};
                emit(dcg::mesh_to_json(out), out_path);
                std::cerr << "delaunay: " << dcg::to_string(dcg::delaunay_check(m.tri, *out.lengths).cls) << '\n';
            }
        } else if (*flow) {
            const auto m = dcg::read_mesh(mesh_path);
            const auto l = mesh_metric(m);
            std::vector<double> v;
            if (velocity == "alternating" || velocity == "dipole") {
                const auto& phi = need_positions(m);
                v.assign(m.tri.num_vertices(), 0.0);
                auto bd = m.tri.boundary_vertices();
                std::sort(bd.begin(), bd.end(), [&](int a, int b) { return std::arg(phi[a]) < std::arg(phi[b]); });
                for (std::size_t k = 0; k < bd.size(); ++k)
                    v[bd[k]] = velocity == "dipole" ? std::cos(std::arg(phi[bd[k]])) : (k % 2 ? -1.0 : 1.0);
            } else {
                v = read_values(velocity, m.tri.num_vertices());
            }
            dcg::FlowOptions fo;
            fo.step = step;
            fo.project = !no_project;
            fo.throw_on_failure = false;
            const auto tr = dcg::conformal_flow(m.tri, l, v, t_end, delta, fo);
            std::ostringstream s;
            dcg::write_trajectory_csv(s, m.tri, tr);
            emit(s.str(), out_path);
            double flat = 0;
            for (const auto& st : tr.states) flat = std::max(flat, st.flatness);
            std::cerr << "termination: " << dcg::to_string(tr.termination) << ", steps " << tr.states.size() - 1
                      << ", max interior |K| " << flat << '\n';
            if (tr.termination != dcg::FlowTermination::Completed) {
                std::cerr << tr.message << '\n';
                exit_code = kNumerical;
            }
        } else if (*yamabe) {
            auto m = dcg::read_mesh(mesh_path);
            const auto l = mesh_metric(m);
            std::vector<double> f;
            if (boundary == "zero" || boundary == "constant" || boundary == "dipole")
                f = dcg::profile_values(dcg::Mesh{m.tri, need_positions(m)}, dcg::parse_profile(boundary), amplitude);
            else
                f = read_values(boundary, m.tri.num_vertices());
            const auto y = dcg::yamabe_solve(m.tri, l, f);
            if (!y.converged) throw dcg::Error(dcg::ErrorCode::NoConvergence, "Newton residual " + std::to_string(y.residual));
            const auto l2 = dcg::conformal_change(m.tri, l, y.u);
            // Lay out from the vertex nearest the origin, keeping its position and first edge direction.
            dcg::Anchor anchor;
            if (m.positions) {
                const auto& phi = *m.positions;
                anchor.from = parse_vertex_set("center", m.tri, &phi)[0];
                anchor.to = m.tri.neighbors(anchor.from)[0];
                anchor.origin = phi[anchor.from];
                anchor.direction = std::arg(phi[anchor.to] - phi[anchor.from]);
            }
            dcg::MeshFile out{m.tri, dcg::develop_flat_metric(m.tri, l2, anchor), l2, false};
            emit(dcg::mesh_to_json(out), out_path);
            std::cerr << "iterations " << y.iterations << ", residual " << y.residual << '\n';
        } else if (*velc || *res) {
            std::optional<dcg::MeshFile> m;
            if (graph_csv.empty()) {
                if (mesh_path.empty()) throw dcg::Error(dcg::ErrorCode::InvalidArgument, "give a mesh or --graph");
                m = dcg::read_mesh(mesh_path);
            }
            const auto g = graph_for(graph_csv, m, *velc ? "unit" : weights);
            const dcg::PlanarEmbedding* phi = m && m->positions ? &*m->positions : nullptr;
            auto set = [&](const std::string& tok) {
                if (m) return parse_vertex_set(tok, m->tri, phi);
                // Graph input: only explicit id lists are meaningful.
                std::vector<int> ids;
                std::istringstream ss(tok);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    std::size_t pos = 0;
                    int v = -1;
                    try {
                        v = std::stoi(item, &pos);
                    } catch (const std::exception&) {
                        pos = 0;
                    }
                    if (pos != item.size() || v < 0 || v >= g.num_vertices)
                        throw dcg::Error(dcg::ErrorCode::InvalidArgument, "bad vertex id '" + item + "'");
                    ids.push_back(v);
                }
                return ids;
            };
            const auto v1 = set(from_set), v2 = set(to_set);
            ordered_json j;
            if (*velc) {
                const auto sol = dcg::vertex_modulus(g, v1, v2);
                j = {{"modulus", sol.objective}, {"vel", 1.0 / sol.objective}, {"duality_gap", sol.duality_gap},
                     {"eta", sol.metric}};
            } else {
                const double r = dcg::effective_resistance(g, v1, v2);
                j = {{"resistance", r}, {"conductance", dcg::edge_conductance(g, v1, v2)}};
            }
            emit(dump(j), out_path);
        } else if (*schwarz) {
            const auto m = dcg::read_mesh(mesh_path);
            const auto m2 = dcg::read_mesh(image_path);
            if (!(m2.tri == m.tri)) throw dcg::Error(dcg::ErrorCode::InvalidArgument, "meshes have different combinatorics");
            const auto& phi = need_positions(m);
            const auto& phi2 = need_positions(m2);
            double r = 0;
            for (int v : m.tri.used_vertices()) r = std::max(r, std::abs(phi[v]));
            const auto s = dcg::schwarz_verify(m.tri, phi, phi2, sr.value_or(r),
                                               sr2.value_or(dcg::distance_to_boundary(m.tri, phi2, {0, 0})), eps);
            ordered_json j{{"M", s.m},         {"bound", s.bound},         {"margin", s.margin},
                           {"worst_vertex", s.worst_vertex}, {"checked", s.checked}, {"fit_residual", s.fit_residual},
                           {"u", s.u}};
            emit(dump(j), out_path);
        } else if (*suite) {
            if (!dcg::is_suite(suite_name)) {
                std::cerr << "unknown suite " << suite_name << '\n';
                return kUsage;
            }
            if (sopts.instances < 0 || sopts.jobs < 1)
                throw dcg::Error(dcg::ErrorCode::InvalidArgument, "--instances must be >= 0 and --jobs >= 1");
            sopts.seed = suite_seed.value_or(default_seed());
            const auto report = dcg::run_suite(suite_name, sopts);
            emit(dcg::suite_report_json(report, stable), out_path);
            std::cerr << report.suite << ": " << report.instances << " instances, " << report.failures
                      << " failed checks, " << report.errors << " errors\n";
            if (!report.passed()) exit_code = kCheckFailure;
        } else if (*svg) {
            const auto m = dcg::read_mesh(mesh_path);
            const auto phi = m.positions ? *m.positions : dcg::develop_flat_metric(m.tri, mesh_metric(m));
            if (!values_csv.empty()) svg_opts.values = read_values(values_csv, m.tri.num_vertices());
            if (m.poincare) svg_opts.unit_circle = true;
            emit(dcg::render_svg(m.tri, phi, svg_opts), out_path);
        }
    } catch (const dcg::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return exit_code;
}
