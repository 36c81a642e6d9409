#include "dcg/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dcg/error.hpp"

namespace dcg {

using nlohmann::json;

namespace {

std::string edge_key(const Edge& e) { return std::to_string(e.a) + "-" + std::to_string(e.b); }

}  // namespace

std::string format_double(double x) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw Error(ErrorCode::Io, "cannot format number");
    return std::string(buf, end);
}

MeshFile parse_mesh_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Io, std::string("mesh JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("faces") || !j["faces"].is_array())
        throw Error(ErrorCode::InvalidArgument, "mesh JSON needs a \"faces\" array");

    MeshFile m;
    std::vector<Face> faces;
    try {
        for (const auto& f : j["faces"]) {
            if (!f.is_array() || f.size() != 3) throw Error(ErrorCode::InvalidArgument, "faces must be index triples");
            faces.push_back({f[0].get<int>(), f[1].get<int>(), f[2].get<int>()});
        }
        BuildOptions opts;
        if (j.contains("vertices")) opts.num_vertices = j["vertices"].get<int>();
        m.tri = Triangulation::build(std::move(faces), opts);
        const auto n = static_cast<std::size_t>(m.tri.num_vertices());

        if (j.contains("positions")) {
            const auto& p = j["positions"];
            if (!p.is_array() || p.size() != n)
                throw Error(ErrorCode::InvalidArgument, "positions must list one [x,y] per vertex");
            PlanarEmbedding phi;
            for (const auto& xy : p) {
                if (!xy.is_array() || xy.size() != 2) throw Error(ErrorCode::InvalidArgument, "positions must be [x,y]");
                phi.z.emplace_back(xy[0].get<double>(), xy[1].get<double>());
            }
            m.positions = std::move(phi);
        }
        if (j.contains("lengths")) {
            const auto& lj = j["lengths"];
            if (!lj.is_object()) throw Error(ErrorCode::InvalidArgument, "lengths must be an object");
            PLMetric l{std::vector<double>(m.tri.num_edges(), std::nan(""))};
            for (const auto& [key, val] : lj.items()) {
                int a = 0, b = 0;
                char dash = 0;
                std::istringstream ks(key);
                if (!(ks >> a >> dash >> b) || dash != '-') throw Error(ErrorCode::InvalidArgument, "bad edge key " + key);
                const int e = m.tri.find_edge(a, b);
                if (e < 0) throw Error(ErrorCode::InvalidArgument, "length given for non-edge " + key);
                l.length[e] = val.get<double>();
            }
            for (int e = 0; e < m.tri.num_edges(); ++e)
                if (std::isnan(l.length[e]))
                    throw Error(ErrorCode::InvalidArgument, "missing length for edge " + edge_key(m.tri.edge(e)));
            m.lengths = std::move(l);
        }
        if (j.contains("model")) {
            const auto model = j["model"].get<std::string>();
            if (model == "poincare")
                m.poincare = true;
            else if (model != "euclidean")
                throw Error(ErrorCode::InvalidArgument, "unknown model " + model);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("mesh JSON: ") + e.what());
    }
    return m;
}

std::string mesh_to_json(const MeshFile& m) {
    json j;
    j["vertices"] = m.tri.num_vertices();
    json faces = json::array();
    for (const Face& f : m.tri.faces()) faces.push_back({f[0], f[1], f[2]});
    j["faces"] = std::move(faces);
    if (m.positions) {
        json p = json::array();
        for (Point z : m.positions->z) p.push_back({z.real(), z.imag()});
        j["positions"] = std::move(p);
    }
    if (m.lengths) {
        json l = json::object();
        for (int e = 0; e < m.tri.num_edges(); ++e) l[edge_key(m.tri.edge(e))] = m.lengths->length[e];
        j["lengths"] = std::move(l);
    }
    if (m.poincare) j["model"] = "poincare";
    return j.dump(1) + "\n";
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
    out << text;
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

MeshFile read_mesh(const std::string& path) { return parse_mesh_json(read_text(path)); }

void write_mesh(const std::string& path, const MeshFile& mesh) { write_text(path, mesh_to_json(mesh)); }

void write_curvature_csv(std::ostream& out, std::span<const double> k) {
    out << "vertex,K\n";
    for (std::size_t v = 0; v < k.size(); ++v) out << v << ',' << format_double(k[v]) << '\n';
}

void write_vertex_csv(std::ostream& out, const std::string& column, std::span<const double> values) {
    out << "vertex," << column << '\n';
    for (std::size_t v = 0; v < values.size(); ++v) out << v << ',' << format_double(values[v]) << '\n';
}

std::vector<double> read_vertex_csv(std::istream& in, int n) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("vertex,", 0) != 0)
        throw Error(ErrorCode::InvalidArgument, "vertex CSV must start with vertex,<column>");
    std::vector<double> values(n, std::nan(""));
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        int v = 0;
        double x = 0;
        if (!(ls >> v >> x) || v < 0 || v >= n) throw Error(ErrorCode::InvalidArgument, "bad vertex CSV row");
        values[v] = x;
    }
    for (int v = 0; v < n; ++v)
        if (std::isnan(values[v])) throw Error(ErrorCode::InvalidArgument, "no value for vertex " + std::to_string(v));
    return values;
}

void write_weights_csv(std::ostream& out, const Triangulation& tri, const EdgeWeights& w) {
    out << "i,j,mu\n";
    for (int e = 0; e < tri.num_edges(); ++e)
        out << tri.edge(e).a << ',' << tri.edge(e).b << ',' << format_double(w.mu[e]) << '\n';
}

void write_graph_csv(std::ostream& out, const WeightedGraph& g) {
    out << "i,j,mu\n";
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        out << g.edges[e].a << ',' << g.edges[e].b << ',' << format_double(g.mu[e]) << '\n';
}

WeightedGraph read_graph_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("i,j,mu", 0) != 0)
        throw Error(ErrorCode::InvalidArgument, "graph CSV must start with i,j,mu");
    std::vector<Edge> edges;
    std::vector<double> mu;
    int n = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        int a = 0, b = 0;
        double w = 0;
        if (!(ls >> a >> b >> w) || a < 0 || b < 0 || a == b)
            throw Error(ErrorCode::InvalidArgument, "bad graph CSV row");
        edges.emplace_back(a, b);
        mu.push_back(w);
        n = std::max({n, a + 1, b + 1});
    }
    return WeightedGraph::from_edges(n, std::move(edges), std::move(mu));
}

void write_trajectory_csv(std::ostream& out, const Triangulation& tri, const FlowTrajectory& tr) {
    out << "t,vertex,u,K\n";
    for (const auto& s : tr.states) {
        const auto k = curvature(tri, s.metric);
        for (int v = 0; v < tri.num_vertices(); ++v)
            out << format_double(s.time) << ',' << v << ',' << format_double(s.u[v]) << ',' << format_double(k[v])
                << '\n';
    }
}

void write_dilatation_csv(std::ostream& out, std::span<const double> per_face) {
    out << "face,K\n";
    for (std::size_t f = 0; f < per_face.size(); ++f) out << f << ',' << format_double(per_face[f]) << '\n';
}

std::string render_svg(const Triangulation& tri, const PlanarEmbedding& phi, const SvgOptions& opts) {
    if (static_cast<int>(phi.size()) != tri.num_vertices())
        throw Error(ErrorCode::InvalidArgument, "embedding size does not match the complex");
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    bool first = true;
    for (int v : tri.used_vertices()) {
        const Point z = phi[v];
        if (first) {
            x0 = x1 = z.real();
            y0 = y1 = z.imag();
            first = false;
        }
        x0 = std::min(x0, z.real());
        x1 = std::max(x1, z.real());
        y0 = std::min(y0, z.imag());
        y1 = std::max(y1, z.imag());
    }
    if (opts.unit_circle) {
        x0 = std::min(x0, -1.0), y0 = std::min(y0, -1.0);
        x1 = std::max(x1, 1.0), y1 = std::max(y1, 1.0);
    }
    const double span = std::max({x1 - x0, y1 - y0, 1e-300});
    const double pad = 0.03 * span;
    const double scale = opts.width / (span + 2 * pad);
    const double height = (y1 - y0 + 2 * pad) * scale;
    auto sx = [&](double x) { return (x - x0 + pad) * scale; };
    auto sy = [&](double y) { return (y1 - y + pad) * scale; };  // y axis points up

    double lo = 0, hi = 0;
    if (opts.values) {
        if (opts.values->size() != phi.size()) throw Error(ErrorCode::InvalidArgument, "one value per vertex");
        lo = *std::min_element(opts.values->begin(), opts.values->end());
        hi = *std::max_element(opts.values->begin(), opts.values->end());
    }
    auto color = [&](double t) {
        const double s = hi > lo ? (t - lo) / (hi - lo) : 0.5;
        const int r = static_cast<int>(std::lround(255 * s)), b = static_cast<int>(std::lround(255 * (1 - s)));
        char buf[16];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, 80, b);
        return std::string(buf);
    };

    std::ostringstream out;
    out.precision(6);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << opts.width << ' ' << height << "\">\n";
    if (opts.unit_circle)
        out << "<circle cx=\"" << sx(0) << "\" cy=\"" << sy(0) << "\" r=\"" << scale
            << "\" fill=\"none\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
    out << "<g stroke=\"#222\" stroke-width=\"0.6\" stroke-linejoin=\"round\">\n";
    for (const Face& f : tri.faces()) {
        std::string fill = "#f4f4f4";
        if (opts.values) fill = color(((*opts.values)[f[0]] + (*opts.values)[f[1]] + (*opts.values)[f[2]]) / 3);
        out << "<polygon points=\"";
        for (int k = 0; k < 3; ++k) out << (k ? " " : "") << sx(phi[f[k]].real()) << ',' << sy(phi[f[k]].imag());
        out << "\" fill=\"" << fill << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace dcg
