#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "dcg/complex.hpp"
#include "dcg/error.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dcg;
using fx::code_of;

namespace {

std::vector<Face> hexagon_fan() {
    std::vector<Face> f;
    for (int k = 0; k < 6; ++k) f.push_back({0, 1 + k, 1 + (k + 1) % 6});
    return f;
}

}  // namespace

TEST(Triangulation, SingleTriangle) {
    auto t = Triangulation::build({{0, 1, 2}});
    EXPECT_EQ(t.num_vertices(), 3);
    EXPECT_EQ(t.num_edges(), 3);
    EXPECT_EQ(t.num_faces(), 1);
    EXPECT_EQ(t.boundary_vertices().size(), 3u);
    for (int e = 0; e < 3; ++e) EXPECT_TRUE(t.is_boundary_edge(e));
    EXPECT_EQ(t.euler_characteristic(), 1);
}

TEST(Triangulation, HexagonFanClassification) {
    auto t = Triangulation::build(hexagon_fan());
    EXPECT_EQ(t.interior_vertices(), std::vector<int>{0});
    EXPECT_EQ(t.boundary_vertices(), (std::vector<int>{1, 2, 3, 4, 5, 6}));
}

TEST(Triangulation, Errors) {
    EXPECT_EQ(code_of([] { Triangulation::build({{0, 1, 2}, {0, 1, 3}, {0, 1, 4}}); }), ErrorCode::NonManifold);
    EXPECT_EQ(code_of([] { Triangulation::build({{0, 1, 2}, {0, 1, 3}}); }), ErrorCode::InconsistentOrientation);
    EXPECT_EQ(code_of([] { Triangulation::build({{0, 1, 2}, {3, 4, 5}}); }), ErrorCode::Disconnected);
    EXPECT_EQ(code_of([] { Triangulation::build({}); }), ErrorCode::InvalidArgument);
    // Two fans glued at a vertex: the link of 0 is two cycles.
    auto f = hexagon_fan();
    for (int k = 0; k < 3; ++k) f.push_back({0, 7 + k, 7 + (k + 1) % 3});
    EXPECT_EQ(code_of([&] { Triangulation::build(f); }), ErrorCode::NonManifold);
}

TEST(Triangulation, AnnulusIsNotADisk) {
    // Hex patch of radius 2 with the center fan removed.
    auto m = gen_hex_patch(2);
    std::vector<Face> kept;
    for (const Face& f : m.tri.faces())
        if (f[0] != 0 && f[1] != 0 && f[2] != 0) kept.push_back(f);
    std::vector<Face> shifted = kept;
    for (auto& f : shifted)
        for (int& v : f) --v;
    EXPECT_EQ(code_of([&] { Triangulation::build(shifted); }), ErrorCode::NotDisk);
}

TEST(OneRing, HexagonFan) {
    auto t = Triangulation::build(hexagon_fan());
    auto c = one_ring(t, 0);
    EXPECT_TRUE(c.disk);
    EXPECT_EQ(c.neighbors.size(), 6u);
    EXPECT_EQ(c.faces.size(), 6u);
    // Cyclic order: consecutive rim vertices.
    for (std::size_t k = 0; k < 6; ++k) {
        const int a = c.neighbors[k], b = c.neighbors[(k + 1) % 6];
        EXPECT_EQ((a % 6) + 1, b);
    }
    auto r = one_ring(t, 1);
    EXPECT_FALSE(r.disk);
    EXPECT_EQ(r.neighbors.size(), 3u);
    EXPECT_EQ(r.faces.size(), 2u);
    EXPECT_EQ(r.neighbors[1], 0);
}

TEST(OneRing, SingleTriangle) {
    auto t = Triangulation::build({{0, 1, 2}});
    auto r = one_ring(t, 0);
    std::vector<int> n = r.neighbors;
    std::sort(n.begin(), n.end());
    EXPECT_EQ(n, (std::vector<int>{1, 2}));
    EXPECT_FALSE(r.disk);
}

TEST(OneRing, DiskIffInterior) {
    auto m = gen_random_delaunay_disk(60, 5);
    for (int v = 0; v < m.tri.num_vertices(); ++v) EXPECT_EQ(one_ring(m.tri, v).disk, m.tri.is_interior(v));
}

TEST(Subcomplex, IdentityAndEmpty) {
    auto t = Triangulation::build(hexagon_fan());
    std::vector<int> all(7);
    std::iota(all.begin(), all.end(), 0);
    EXPECT_EQ(subcomplex_generated_by(t, all), t);
    std::vector<int> rim{1, 2, 3, 4, 5, 6};
    EXPECT_EQ(code_of([&] { subcomplex_generated_by(t, rim); }), ErrorCode::EmptySubcomplex);
}

TEST(Subcomplex, OneRingOfHexPatch) {
    auto m = gen_hex_patch(2);
    std::vector<int> ring{0};
    for (int w : m.tri.neighbors(0)) ring.push_back(w);
    auto sub = subcomplex_generated_by(m.tri, ring);
    EXPECT_EQ(sub.num_faces(), 6);
    for (const Face& f : sub.faces()) EXPECT_TRUE(f[0] == 0 || f[1] == 0 || f[2] == 0);
    EXPECT_EQ(sub.interior_vertices(), std::vector<int>{0});
    // Idempotent.
    EXPECT_EQ(subcomplex_generated_by(sub, ring), sub);
}

TEST(Classify, InnerPoints) {
    auto m = gen_hex_patch(3);
    std::vector<int> v0;
    const auto ring = hex_ring_index(3);
    for (int v = 0; v < m.tri.num_vertices(); ++v)
        if (ring[v] <= 2) v0.push_back(v);
    auto s = classify(m.tri, v0);
    EXPECT_EQ(s.interior.size(), 7u);
    EXPECT_EQ(s.boundary.size(), 12u);
}

TEST(HexPatch, Counts) {
    for (int r : {1, 2, 3, 5}) {
        auto m = gen_hex_patch(r);
        EXPECT_EQ(m.tri.num_vertices(), 1 + 3 * r * (r + 1));
        EXPECT_EQ(m.tri.num_faces(), 6 * r * r);
        EXPECT_EQ(m.tri.euler_characteristic(), 1);
        EXPECT_EQ(m.pos.z[0], Point(0, 0));
    }
    EXPECT_EQ(gen_hex_patch(1).tri.num_faces(), 6);
    EXPECT_THROW(gen_hex_patch(0), Error);
}

TEST(HexPatch, FacesCounterclockwiseAndUnit) {
    auto m = gen_hex_patch(4);
    for (const Face& f : m.tri.faces()) EXPECT_EQ(orient2d(m.pos[f[0]], m.pos[f[1]], m.pos[f[2]]), 1);
    for (const Edge& e : m.tri.edges()) EXPECT_NEAR(std::abs(m.pos[e.a] - m.pos[e.b]), 1.0, 1e-15);
}

TEST(RandomDelaunay, ThreePointsIsOneTriangle) {
    auto m = gen_random_delaunay_disk(3, 1);
    EXPECT_EQ(m.tri.num_faces(), 1);
}

TEST(RandomDelaunay, Deterministic) {
    auto a = gen_random_delaunay_disk(50, 7);
    auto b = gen_random_delaunay_disk(50, 7);
    EXPECT_EQ(a.tri, b.tri);
    EXPECT_EQ(a.pos.z, b.pos.z);
    EXPECT_FALSE(a.tri == gen_random_delaunay_disk(50, 8).tri);
}

TEST(RandomDelaunay, EmptyCircumdiskAndEuler) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto m = gen_random_delaunay_disk(80, seed);
        EXPECT_EQ(m.tri.euler_characteristic(), 1);
        EXPECT_EQ(m.tri.num_vertices(), 80);
        for (const Face& f : m.tri.faces()) {
            ASSERT_EQ(orient2d(m.pos[f[0]], m.pos[f[1]], m.pos[f[2]]), 1);
            // Brute force: no vertex strictly inside any circumcircle.
            for (int v = 0; v < 80; ++v) {
                if (v == f[0] || v == f[1] || v == f[2]) continue;
                EXPECT_LE(oracle::incircle_ld(m.pos[f[0]], m.pos[f[1]], m.pos[f[2]], m.pos[v]), 1e-15L);
            }
        }
    }
}

TEST(RandomDelaunay, RegularOptions) {
    const auto opts = regular_disk_options();
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto m = gen_random_delaunay_disk(50, seed, opts);
        EXPECT_EQ(m.tri.num_vertices(), 50);
        EXPECT_EQ(m.tri.used_vertices().size(), 50u);
        EXPECT_EQ(m.tri.euler_characteristic(), 1);
        for (const Face& f : m.tri.faces()) {
            for (int k = 0; k < 3; ++k) {
                const Point a = m.pos[f[(k + 1) % 3]] - m.pos[f[k]], b = m.pos[f[(k + 2) % 3]] - m.pos[f[k]];
                EXPECT_GE(std::abs(std::arg(b / a)), opts.min_angle);
            }
            // Trimming only removes faces, so the survivors keep empty circumdisks.
            for (int v = 0; v < 50; ++v)
                if (v != f[0] && v != f[1] && v != f[2])
                    EXPECT_LE(oracle::incircle_ld(m.pos[f[0]], m.pos[f[1]], m.pos[f[2]], m.pos[v]), 1e-15L);
        }
    }
}

TEST(Delaunay, CocircularGrid) {
    // A 4x4 grid is fully cocircular in every cell; the result must still be
    // a valid triangulation covering the square.
    std::vector<Point> pts;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) pts.emplace_back(i, j);
    auto t = delaunay_triangulation(pts);
    EXPECT_EQ(t.num_faces(), 18);
    EXPECT_EQ(t.euler_characteristic(), 1);
}

TEST(Delaunay, CollinearInputRejected) {
    std::vector<Point> pts{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    EXPECT_EQ(code_of([&] { delaunay_triangulation(pts); }), ErrorCode::DegenerateInput);
}

TEST(Predicates, NearDegenerate) {
    const Point a(0.5, 0.5), b(12, 12), c(24, 24);
    EXPECT_EQ(orient2d(a, b, c), 0);
    const double tiny = std::nextafter(0.5, 1.0);
    EXPECT_NE(orient2d(Point(tiny, 0.5), b, c), 0);
    // Points on the unit circle's square: exactly cocircular.
    EXPECT_EQ(incircle(Point(1, 0), Point(0, 1), Point(-1, 0), Point(0, -1)), 0);
    EXPECT_EQ(incircle(Point(1, 0), Point(0, 1), Point(-1, 0), Point(0, 0)), 1);
    EXPECT_EQ(incircle(Point(1, 0), Point(0, 1), Point(-1, 0), Point(2, 0)), -1);
}
