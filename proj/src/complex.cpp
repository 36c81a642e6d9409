#include "dcg/complex.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

#include "dcg/error.hpp"
#include "dcg/random.hpp"

namespace dcg {
namespace {

struct HalfEdge {
    int a, b;  // sorted endpoints
    int face;
    int corner;  // local index of the opposite corner
    bool forward;  // traversed a -> b inside `face`
};

std::string face_str(const Face& f) {
    return "(" + std::to_string(f[0]) + "," + std::to_string(f[1]) + "," + std::to_string(f[2]) + ")";
}

int find_root(std::vector<int>& parent, int x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

// Link of v as a successor map: for each incident face rotated to (v, a, b),
// next[a] = (b, face).
struct LinkWalk {
    std::vector<int> ring;
    std::vector<int> faces;
    int components = 0;
    bool closed = false;
};

LinkWalk walk_link(const Triangulation& tri, int v) {
    std::map<int, std::pair<int, int>> next;
    std::set<int> targets;
    for (int f : tri.vertex_faces(v)) {
        const Face& fc = tri.face(f);
        int k = 0;
        while (fc[k] != v) ++k;
        const int a = fc[(k + 1) % 3], b = fc[(k + 2) % 3];
        next[a] = {b, f};
        targets.insert(b);
    }
    LinkWalk out;
    std::set<int> visited;
    auto walk_from = [&](int start) {
        ++out.components;
        int cur = start;
        out.ring.push_back(cur);
        visited.insert(cur);
        while (true) {
            auto it = next.find(cur);
            if (it == next.end()) break;
            out.faces.push_back(it->second.second);
            cur = it->second.first;
            if (cur == start) {
                out.closed = true;
                break;
            }
            if (visited.count(cur)) break;
            out.ring.push_back(cur);
            visited.insert(cur);
        }
    };
    // Path starts first, then any remaining cycles.
    for (const auto& [a, unused] : next) {
        if (!targets.count(a) && !visited.count(a)) walk_from(a);
    }
    for (const auto& [a, unused] : next) {
        if (!visited.count(a)) walk_from(a);
    }
    if (out.components != 1) out.closed = false;
    return out;
}

}  // namespace

Triangulation Triangulation::build(std::vector<Face> faces, BuildOptions opts) {
    if (faces.empty()) throw Error(ErrorCode::InvalidArgument, "face list is empty");
    int max_index = -1;
    for (const Face& f : faces) {
        for (int v : f) {
            if (v < 0) throw Error(ErrorCode::InvalidArgument, "negative vertex index in " + face_str(f));
            max_index = std::max(max_index, v);
        }
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
            throw Error(ErrorCode::InvalidArgument, "face " + face_str(f) + " repeats a vertex");
    }
    const int n = opts.num_vertices < 0 ? max_index + 1 : opts.num_vertices;
    if (max_index >= n) throw Error(ErrorCode::InvalidArgument, "vertex index exceeds num_vertices");

    {
        std::set<std::array<int, 3>> seen;
        for (const Face& f : faces) {
            std::array<int, 3> key = f;
            std::sort(key.begin(), key.end());
            if (!seen.insert(key).second)
                throw Error(ErrorCode::NonManifold, "duplicate face " + face_str(f));
        }
    }

    Triangulation t;
    t.num_vertices_ = n;
    t.faces_ = std::move(faces);
    const int nf = t.num_faces();

    std::vector<HalfEdge> halves;
    halves.reserve(3 * nf);
    for (int f = 0; f < nf; ++f) {
        const Face& fc = t.faces_[f];
        for (int k = 0; k < 3; ++k) {
            const int tail = fc[(k + 1) % 3], head = fc[(k + 2) % 3];
            halves.push_back({std::min(tail, head), std::max(tail, head), f, k, tail < head});
        }
    }
    std::sort(halves.begin(), halves.end(), [](const HalfEdge& x, const HalfEdge& y) {
        return std::tie(x.a, x.b, x.face) < std::tie(y.a, y.b, y.face);
    });

    t.face_edges_.assign(nf, {-1, -1, -1});
    for (std::size_t i = 0; i < halves.size();) {
        std::size_t j = i;
        while (j < halves.size() && halves[j].a == halves[i].a && halves[j].b == halves[i].b) ++j;
        const int count = static_cast<int>(j - i);
        const Edge e(halves[i].a, halves[i].b);
        if (count > 2)
            throw Error(ErrorCode::NonManifold, "edge " + std::to_string(e.a) + "-" + std::to_string(e.b) +
                                                    " lies in " + std::to_string(count) + " faces");
        if (count == 2 && halves[i].forward == halves[i + 1].forward)
            throw Error(ErrorCode::InconsistentOrientation,
                        "edge " + std::to_string(e.a) + "-" + std::to_string(e.b) +
                            " has the same direction in faces " + std::to_string(halves[i].face) + " and " +
                            std::to_string(halves[i + 1].face));
        const int id = t.num_edges();
        t.edges_.push_back(e);
        t.edge_faces_.push_back({halves[i].face, count == 2 ? halves[i + 1].face : -1});
        for (std::size_t k = i; k < j; ++k) t.face_edges_[halves[k].face][halves[k].corner] = id;
        i = j;
    }

    // Vertex -> faces.
    t.vf_offsets_.assign(n + 1, 0);
    for (const Face& f : t.faces_)
        for (int v : f) ++t.vf_offsets_[v + 1];
    std::partial_sum(t.vf_offsets_.begin(), t.vf_offsets_.end(), t.vf_offsets_.begin());
    t.vf_faces_.resize(t.vf_offsets_[n]);
    {
        std::vector<int> fill(t.vf_offsets_.begin(), t.vf_offsets_.end() - 1);
        for (int f = 0; f < nf; ++f)
            for (int v : t.faces_[f]) t.vf_faces_[fill[v]++] = f;
    }

    // Vertex -> (neighbour, edge), sorted by neighbour.
    t.ve_offsets_.assign(n + 1, 0);
    for (const Edge& e : t.edges_) {
        ++t.ve_offsets_[e.a + 1];
        ++t.ve_offsets_[e.b + 1];
    }
    std::partial_sum(t.ve_offsets_.begin(), t.ve_offsets_.end(), t.ve_offsets_.begin());
    t.ve_neighbors_.resize(t.ve_offsets_[n]);
    t.ve_edges_.resize(t.ve_offsets_[n]);
    {
        std::vector<int> fill(t.ve_offsets_.begin(), t.ve_offsets_.end() - 1);
        // Edges are sorted lexicographically, so each vertex's list comes out sorted.
        for (int pass = 0; pass < 2; ++pass) {
            for (int id = 0; id < t.num_edges(); ++id) {
                const Edge& e = t.edges_[id];
                if (pass == 0) {
                    t.ve_neighbors_[fill[e.b]] = e.a;
                    t.ve_edges_[fill[e.b]++] = id;
                } else {
                    t.ve_neighbors_[fill[e.a]] = e.b;
                    t.ve_edges_[fill[e.a]++] = id;
                }
            }
        }
    }

    t.interior_.assign(n, 0);
    for (int v = 0; v < n; ++v) {
        if (t.vf_offsets_[v] == t.vf_offsets_[v + 1]) {
            if (opts.require_disk)
                throw Error(ErrorCode::Disconnected, "vertex " + std::to_string(v) + " is not in any face");
            continue;
        }
        const LinkWalk link = walk_link(t, v);
        if (link.components != 1 && opts.require_disk)
            throw Error(ErrorCode::NonManifold, "link of vertex " + std::to_string(v) + " has " +
                                                    std::to_string(link.components) + " components");
        t.interior_[v] = link.closed ? 1 : 0;
    }

    if (opts.require_disk) {
        std::vector<int> parent(nf);
        std::iota(parent.begin(), parent.end(), 0);
        for (const auto& ef : t.edge_faces_)
            if (ef[1] >= 0) parent[find_root(parent, ef[0])] = find_root(parent, ef[1]);
        const int root = find_root(parent, 0);
        for (int f = 0; f < nf; ++f)
            if (find_root(parent, f) != root)
                throw Error(ErrorCode::Disconnected, "face adjacency graph is disconnected at face " +
                                                         std::to_string(f));
        if (t.euler_characteristic() != 1)
            throw Error(ErrorCode::NotDisk,
                        "Euler characteristic " + std::to_string(t.euler_characteristic()) + " != 1");
    }
    return t;
}

int Triangulation::find_edge(int i, int j) const {
    if (i < 0 || j < 0 || i >= num_vertices_ || j >= num_vertices_) return -1;
    const auto nb = neighbors(i);
    const auto it = std::lower_bound(nb.begin(), nb.end(), j);
    if (it == nb.end() || *it != j) return -1;
    return vertex_edges(i)[it - nb.begin()];
}

int Triangulation::opposite_vertex(int f, int e) const {
    for (int k = 0; k < 3; ++k)
        if (face_edges_[f][k] == e) return faces_[f][k];
    throw Error(ErrorCode::InvalidArgument, "edge " + std::to_string(e) + " is not a side of face " + std::to_string(f));
}

std::span<const int> Triangulation::vertex_faces(int v) const {
    return std::span<const int>(vf_faces_).subspan(vf_offsets_[v], vf_offsets_[v + 1] - vf_offsets_[v]);
}

std::span<const int> Triangulation::neighbors(int v) const {
    return std::span<const int>(ve_neighbors_).subspan(ve_offsets_[v], ve_offsets_[v + 1] - ve_offsets_[v]);
}

std::span<const int> Triangulation::vertex_edges(int v) const {
    return std::span<const int>(ve_edges_).subspan(ve_offsets_[v], ve_offsets_[v + 1] - ve_offsets_[v]);
}

std::vector<int> Triangulation::interior_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < num_vertices_; ++v)
        if (interior_[v]) out.push_back(v);
    return out;
}

std::vector<int> Triangulation::boundary_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < num_vertices_; ++v)
        if (is_used(v) && !interior_[v]) out.push_back(v);
    return out;
}

std::vector<int> Triangulation::used_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < num_vertices_; ++v)
        if (is_used(v)) out.push_back(v);
    return out;
}

int Triangulation::euler_characteristic() const {
    int used = 0;
    for (int v = 0; v < num_vertices_; ++v) used += is_used(v) ? 1 : 0;
    return used - num_edges() + num_faces();
}

OneRing one_ring(const Triangulation& tri, int v) {
    if (v < 0 || v >= tri.num_vertices()) throw Error(ErrorCode::InvalidArgument, "vertex out of range");
    OneRing ring;
    ring.center = v;
    if (!tri.is_used(v)) return ring;
    LinkWalk link = walk_link(tri, v);
    ring.neighbors = std::move(link.ring);
    ring.faces = std::move(link.faces);
    ring.disk = tri.is_interior(v);
    return ring;
}

VertexSubset classify(const Triangulation& tri, std::span<const int> members) {
    VertexSubset out;
    std::vector<char> in(tri.num_vertices(), 0);
    for (int v : members) {
        if (v < 0 || v >= tri.num_vertices()) throw Error(ErrorCode::InvalidArgument, "vertex out of range");
        in[v] = 1;
    }
    for (int v = 0; v < tri.num_vertices(); ++v) {
        if (!in[v]) continue;
        out.members.push_back(v);
        bool inner = tri.is_interior(v);
        for (int w : tri.neighbors(v)) inner = inner && in[w];
        (inner ? out.interior : out.boundary).push_back(v);
    }
    return out;
}

Triangulation subcomplex_generated_by(const Triangulation& tri, std::span<const int> members) {
    std::vector<char> in(tri.num_vertices(), 0);
    for (int v : members) {
        if (v < 0 || v >= tri.num_vertices()) throw Error(ErrorCode::InvalidArgument, "vertex out of range");
        in[v] = 1;
    }
    std::vector<Face> kept;
    for (const Face& f : tri.faces())
        if (in[f[0]] && in[f[1]] && in[f[2]]) kept.push_back(f);
    if (kept.empty()) throw Error(ErrorCode::EmptySubcomplex, "no face has all vertices in the subset");
    return Triangulation::build(std::move(kept), {tri.num_vertices(), false});
}

namespace {

int hex_distance(int q, int r) { return std::max({std::abs(q), std::abs(r), std::abs(q + r)}); }

struct HexVertex {
    int q, r, ring;
    double angle;
};

std::vector<HexVertex> hex_vertices(int radius) {
    std::vector<HexVertex> verts;
    for (int q = -radius; q <= radius; ++q)
        for (int r = -radius; r <= radius; ++r) {
            const int d = hex_distance(q, r);
            if (d > radius) continue;
            const double x = q + 0.5 * r, y = r * (std::numbers::sqrt3 / 2.0);
            double a = std::atan2(y, x);
            if (a < 0) a += 2.0 * std::numbers::pi;
            verts.push_back({q, r, d, d == 0 ? 0.0 : a});
        }
    std::sort(verts.begin(), verts.end(), [](const HexVertex& u, const HexVertex& w) {
        return std::tie(u.ring, u.angle) < std::tie(w.ring, w.angle);
    });
    return verts;
}

}  // namespace

Mesh gen_hex_patch(int radius) {
    if (radius < 1) throw Error(ErrorCode::InvalidArgument, "hex patch radius must be >= 1");
    const auto verts = hex_vertices(radius);
    std::map<std::pair<int, int>, int> index;
    Mesh mesh;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        index[{verts[i].q, verts[i].r}] = static_cast<int>(i);
        mesh.pos.z.emplace_back(verts[i].q + 0.5 * verts[i].r, verts[i].r * (std::numbers::sqrt3 / 2.0));
    }
    auto id = [&](int q, int r) {
        auto it = index.find({q, r});
        return it == index.end() ? -1 : it->second;
    };
    std::vector<Face> faces;
    for (int q = -radius - 1; q <= radius; ++q)
        for (int r = -radius - 1; r <= radius; ++r) {
            const int a = id(q, r), b = id(q + 1, r), c = id(q, r + 1), d = id(q + 1, r + 1);
            if (a >= 0 && b >= 0 && c >= 0) faces.push_back({a, b, c});
            if (b >= 0 && d >= 0 && c >= 0) faces.push_back({b, d, c});
        }
    mesh.tri = Triangulation::build(std::move(faces));
    return mesh;
}

std::vector<int> hex_ring_index(int radius) {
    std::vector<int> out;
    for (const auto& v : hex_vertices(radius)) out.push_back(v.ring);
    return out;
}

namespace {

constexpr int kGhost = -1;

// Bowyer-Watson with ghost triangles. A hull edge x -> y of a finite
// (counterclockwise) triangle has the ghost (y, x, ghost) on its outer side.
struct Tri {
    std::array<int, 3> v;
    bool alive = true;
};

bool in_conflict(const Tri& t, std::span<const Point> pts, Point p) {
    if (t.v[2] == kGhost) {
        const Point a = pts[t.v[1]], b = pts[t.v[0]];
        const int o = orient2d(a, b, p);
        if (o < 0) return true;
        if (o > 0) return false;
        // Collinear: conflict only strictly inside the segment.
        const Point d = b - a;
        const double s = std::real((p - a) * std::conj(d));
        return s > 0 && s < std::norm(d);
    }
    return incircle(pts[t.v[0]], pts[t.v[1]], pts[t.v[2]], p) > 0;
}

}  // namespace

Triangulation delaunay_triangulation(std::span<const Point> pts) {
    const int n = static_cast<int>(pts.size());
    if (n < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 points");
    int i1 = -1;
    for (int i = 1; i < n && i1 < 0; ++i)
        if (pts[i] != pts[0]) i1 = i;
    int i2 = -1;
    for (int i = 1; i < n && i2 < 0 && i1 >= 0; ++i)
        if (i != i1 && orient2d(pts[0], pts[i1], pts[i]) != 0) i2 = i;
    if (i2 < 0) throw Error(ErrorCode::DegenerateInput, "all points are collinear");

    std::vector<Tri> tris;
    std::array<int, 3> seed{0, i1, i2};
    if (orient2d(pts[0], pts[i1], pts[i2]) < 0) std::swap(seed[1], seed[2]);
    tris.push_back({seed});
    // Ghosts sit across each hull edge x -> y, stored as (y, x, ghost).
    for (int k = 0; k < 3; ++k) tris.push_back({{seed[(k + 1) % 3], seed[k], kGhost}});

    for (int p = 1; p < n; ++p) {
        if (p == i1 || p == i2) continue;
        std::vector<int> conflict;
        for (int t = 0; t < static_cast<int>(tris.size()); ++t)
            if (tris[t].alive && in_conflict(tris[t], pts, pts[p])) conflict.push_back(t);
        if (conflict.empty())
            throw Error(ErrorCode::DegenerateInput, "point " + std::to_string(p) + " duplicates an existing vertex");

        std::set<std::pair<int, int>> directed;
        for (int t : conflict)
            for (int k = 0; k < 3; ++k) directed.insert({tris[t].v[k], tris[t].v[(k + 1) % 3]});
        for (int t : conflict) tris[t].alive = false;
        for (const auto& [x, y] : directed) {
            if (directed.count({y, x})) continue;
            if (x == kGhost)
                tris.push_back({{y, p, kGhost}});
            else if (y == kGhost)
                tris.push_back({{p, x, kGhost}});
            else
                tris.push_back({{x, y, p}});
        }
    }

    std::vector<Face> faces;
    for (const Tri& t : tris)
        if (t.alive && t.v[2] != kGhost) faces.push_back(t.v);
    std::sort(faces.begin(), faces.end());
    return Triangulation::build(std::move(faces), {n, true});
}

namespace {

double corner_at(const PlanarEmbedding& pos, int v, int a, int b) {
    const Point d1 = pos[a] - pos[v], d2 = pos[b] - pos[v];
    return std::abs(std::arg(d2 / d1));
}

// Repeatedly removes the flattest trimmable boundary face.
Triangulation trim_flat_hull(Triangulation tri, const PlanarEmbedding& pos, double trim_angle) {
    for (;;) {
        int best = -1;
        double widest = trim_angle;
        for (int f = 0; f < tri.num_faces(); ++f) {
            int boundary = 0, corner = -1;
            for (int k = 0; k < 3; ++k)
                if (tri.is_boundary_edge(tri.face_edge(f, k))) {
                    ++boundary;
                    corner = k;
                }
            const Face& fc = tri.face(f);
            if (boundary != 1 || !tri.is_interior(fc[corner])) continue;
            const double a = corner_at(pos, fc[corner], fc[(corner + 1) % 3], fc[(corner + 2) % 3]);
            if (a > widest) {
                widest = a;
                best = f;
            }
        }
        if (best < 0) return tri;
        std::vector<Face> kept;
        for (int f = 0; f < tri.num_faces(); ++f)
            if (f != best) kept.push_back(tri.face(f));
        tri = Triangulation::build(std::move(kept), {tri.num_vertices(), true});
    }
}

double smallest_corner(const Triangulation& tri, const PlanarEmbedding& pos) {
    double m = std::numbers::pi;
    for (const Face& f : tri.faces())
        for (int k = 0; k < 3; ++k) m = std::min(m, corner_at(pos, f[k], f[(k + 1) % 3], f[(k + 2) % 3]));
    return m;
}

}  // namespace

RandomDiskOptions regular_disk_options() {
    RandomDiskOptions o;
    o.trim_angle = 2.0 * std::numbers::pi / 3.0;
    o.min_angle = 0.05;
    return o;
}

Mesh gen_random_delaunay_disk(int n, std::uint64_t seed, const RandomDiskOptions& opts) {
    if (n < 3) throw Error(ErrorCode::InvalidArgument, "random Delaunay disk needs n >= 3");
    SplitMix64 rng(seed);
    for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
        Mesh mesh;
        mesh.pos.z.resize(n);
        for (auto& z : mesh.pos.z) z = rng.in_disk();
        try {
            mesh.tri = delaunay_triangulation(mesh.pos.z);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateInput) throw;
            continue;
        }
        if (opts.trim_angle < std::numbers::pi) mesh.tri = trim_flat_hull(std::move(mesh.tri), mesh.pos, opts.trim_angle);
        if (opts.min_angle > 0.0 && smallest_corner(mesh.tri, mesh.pos) < opts.min_angle) continue;
        return mesh;
    }
    throw Error(ErrorCode::DegenerateInput,
                "no acceptable sample in " + std::to_string(opts.max_attempts) + " attempts");
}

}  // namespace dcg
