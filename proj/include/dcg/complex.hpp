#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "dcg/predicates.hpp"

namespace dcg {

using Face = std::array<int, 3>;

/// Undirected edge with a < b.
struct Edge {
    int a = 0;
    int b = 0;

    Edge() = default;
    Edge(int i, int j) : a(i < j ? i : j), b(i < j ? j : i) {}

    int other(int v) const { return v == a ? b : a; }
    auto operator<=>(const Edge&) const = default;
};

/// Vertex positions in the complex plane, indexed like the triangulation.
struct PlanarEmbedding {
    std::vector<Point> z;

    std::size_t size() const { return z.size(); }
    Point operator[](std::size_t i) const { return z[i]; }
    Point& operator[](std::size_t i) { return z[i]; }
};

struct BuildOptions {
    /// Size of the vertex index space; -1 means max index + 1.
    int num_vertices = -1;
    /// Require a connected disk patch using every vertex index. Subcomplexes
    /// are built with this off and keep their parent's index space.
    bool require_disk = true;
};

/// Immutable oriented triangulation of a surface with boundary.
///
/// Faces are counterclockwise in the reference embedding; every interior
/// edge is traversed in opposite directions by its two faces. Edge ids index
/// the lexicographically sorted edge list.
class Triangulation {
public:
    Triangulation() = default;

    static Triangulation build(std::vector<Face> faces, BuildOptions opts = {});

    int num_vertices() const { return num_vertices_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int num_faces() const { return static_cast<int>(faces_.size()); }

    std::span<const Face> faces() const { return faces_; }
    std::span<const Edge> edges() const { return edges_; }
    const Face& face(int f) const { return faces_[f]; }
    const Edge& edge(int e) const { return edges_[e]; }

    /// Edge id of {i, j} or -1.
    int find_edge(int i, int j) const;

    /// Faces adjacent to edge e; the second entry is -1 on boundary edges.
    const std::array<int, 2>& edge_faces(int e) const { return edge_faces_[e]; }
    bool is_boundary_edge(int e) const { return edge_faces_[e][1] < 0; }

    /// Edge id of the face side opposite local corner k.
    int face_edge(int f, int k) const { return face_edges_[f][k]; }
    /// Vertex of face f not on edge e.
    int opposite_vertex(int f, int e) const;

    std::span<const int> vertex_faces(int v) const;
    /// Neighbours of v in increasing order, paired with vertex_edges(v).
    std::span<const int> neighbors(int v) const;
    std::span<const int> vertex_edges(int v) const;
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    bool is_used(int v) const { return degree(v) > 0; }
    /// True iff the link of v is a single closed cycle (R_v is a 1-ring disk).
    bool is_interior(int v) const { return interior_[v] != 0; }
    std::vector<int> interior_vertices() const;
    std::vector<int> boundary_vertices() const;
    std::vector<int> used_vertices() const;

    int euler_characteristic() const;

    bool operator==(const Triangulation& o) const {
        return num_vertices_ == o.num_vertices_ && faces_ == o.faces_;
    }

private:
    int num_vertices_ = 0;
    std::vector<Face> faces_;
    std::vector<Edge> edges_;
    std::vector<std::array<int, 2>> edge_faces_;
    std::vector<std::array<int, 3>> face_edges_;
    std::vector<int> vf_offsets_, vf_faces_;
    std::vector<int> ve_offsets_, ve_neighbors_, ve_edges_;
    std::vector<char> interior_;
};

struct OneRing {
    int center = -1;
    /// Counterclockwise cycle (interior) or path (boundary) of neighbours.
    std::vector<int> neighbors;
    /// Faces in the same rotational order; faces[k] spans neighbors[k], neighbors[k+1].
    std::vector<int> faces;
    bool disk = false;
};

OneRing one_ring(const Triangulation& tri, int v);

struct VertexSubset {
    std::vector<int> members;
    std::vector<int> interior;
    std::vector<int> boundary;
};

/// int(V0): members whose whole neighbourhood lies in V0 and whose star is a
/// 1-ring disk; the remaining members form the boundary.
VertexSubset classify(const Triangulation& tri, std::span<const int> members);

/// Faces with all three vertices in `members`, in the parent index space.
Triangulation subcomplex_generated_by(const Triangulation& tri, std::span<const int> members);

struct Mesh {
    Triangulation tri;
    PlanarEmbedding pos;
};

/// Unit equilateral lattice patch of combinatorial radius `radius`, vertex 0
/// at the origin and rings ordered outward by angle.
Mesh gen_hex_patch(int radius);

/// Hexagonal lattice distance of each vertex of a hex patch from the center.
std::vector<int> hex_ring_index(int radius);

/// Delaunay triangulation of the given points (incremental insertion with
/// exact predicates). Every point becomes a vertex.
Triangulation delaunay_triangulation(std::span<const Point> points);

struct RandomDiskOptions {
    /// Drop boundary faces whose angle opposite the boundary edge exceeds
    /// this (only when the opposite vertex is interior, so the patch stays a
    /// disk and keeps every vertex). The default keeps the full hull.
    double trim_angle = 4.0;
    /// Resample until every corner angle is at least this.
    double min_angle = 0.0;
    int max_attempts = 256;
};

/// Delaunay triangulation of n uniform points in the unit disk.
Mesh gen_random_delaunay_disk(int n, std::uint64_t seed, const RandomDiskOptions& opts = {});

/// Options giving shape-regular random meshes: flat hull triangles trimmed,
/// corners at least 0.05 rad.
RandomDiskOptions regular_disk_options();

}  // namespace dcg
