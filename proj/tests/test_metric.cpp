#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "dcg/metric.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dcg;
using fx::code_of;
using std::numbers::pi;

namespace {

PLMetric single_face_metric(const Triangulation& t, double a, double b, double c) {
    // a, b, c are the lengths of edges 1-2, 0-2, 0-1 (opposite corners 0, 1, 2).
    PLMetric l;
    l.length.resize(3);
    l.length[t.find_edge(1, 2)] = a;
    l.length[t.find_edge(0, 2)] = b;
    l.length[t.find_edge(0, 1)] = c;
    return l;
}

}  // namespace

TEST(CornerAngles, Equilateral) {
    auto t = Triangulation::build({{0, 1, 2}});
    auto th = corner_angles(t, single_face_metric(t, 1, 1, 1));
    for (double a : th.angle) EXPECT_NEAR(a, pi / 3, 1e-15);
}

TEST(CornerAngles, Pythagorean) {
    auto t = Triangulation::build({{0, 1, 2}});
    auto th = corner_angles(t, single_face_metric(t, 5, 4, 3));
    EXPECT_NEAR(th.at(0, 0), pi / 2, 1e-15);
    EXPECT_NEAR(th.at(0, 0) + th.at(0, 1) + th.at(0, 2), pi, 1e-15);
}

TEST(CornerAngles, DegenerateRejected) {
    auto t = Triangulation::build({{0, 1, 2}});
    try {
        corner_angles(t, single_face_metric(t, 2, 1, 1));
        FAIL();
    } catch (const TriangleInequalityError& e) {
        EXPECT_EQ(e.code(), ErrorCode::ViolatedTriangleInequality);
        EXPECT_EQ(e.face(), 0);
    }
}

TEST(CornerAngles, MatchesLawOfCosinesAndSumsToPi) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto m = gen_random_delaunay_disk(60, seed);
        auto l = metric_from_embedding(m.tri, m.pos);
        auto th = corner_angles(m.tri, l);
        for (int f = 0; f < m.tri.num_faces(); ++f) {
            double s = 0;
            for (int k = 0; k < 3; ++k) {
                const double a = l.length[m.tri.face_edge(f, k)];
                const double b = l.length[m.tri.face_edge(f, (k + 1) % 3)];
                const double c = l.length[m.tri.face_edge(f, (k + 2) % 3)];
                EXPECT_NEAR(th.at(f, k), oracle::angle_cos(a, b, c), 1e-9);
                s += th.at(f, k);
            }
            EXPECT_NEAR(s, pi, 1e-12);
        }
    }
}

TEST(Nondegeneracy, Examples) {
    auto m = fx::equilateral_pair();
    auto l = metric_from_embedding(m.tri, m.pos);
    EXPECT_TRUE(validate_nondegeneracy(m.tri, l, pi / 6).ok);
    auto t = Triangulation::build({{0, 1, 2}});
    auto r = validate_nondegeneracy(t, single_face_metric(t, 3, 4, 5), 0.7);
    EXPECT_FALSE(r.ok);
    EXPECT_NEAR(r.witness.angle, std::asin(3.0 / 5.0), 1e-15);
    EXPECT_EQ(r.witness.vertex, 0);
    EXPECT_EQ(code_of([&] { validate_nondegeneracy(t, l, 0.0); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([&] { validate_nondegeneracy(t, l, 1.1); }), ErrorCode::InvalidArgument);
}

TEST(DelaunayCheck, SquareIsBoundaryCase) {
    auto m = fx::square_diagonal();
    auto r = delaunay_check(m.tri, metric_from_embedding(m.tri, m.pos));
    EXPECT_EQ(r.cls, DelaunayClass::Delaunay);
    EXPECT_NEAR(r.max_angle_sum, pi, 1e-15);
    EXPECT_EQ(r.witness_edge, m.tri.find_edge(0, 2));
}

TEST(DelaunayCheck, HexLatticeUniform) {
    auto m = gen_hex_patch(3);
    auto r = delaunay_check(m.tri, metric_from_embedding(m.tri, m.pos));
    EXPECT_EQ(r.cls, DelaunayClass::UniformlyDelaunay);
    EXPECT_NEAR(r.epsilon_star, pi / 3, 1e-14);
}

TEST(DelaunayCheck, RectangleIsCocircular) {
    // Both diagonals of a rectangle are Delaunay: its corners are cocircular.
    auto m = fx::make_mesh({{0, 0}, {10, 0}, {10, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}});
    EXPECT_EQ(delaunay_check(m.tri, metric_from_embedding(m.tri, m.pos)).cls, DelaunayClass::Delaunay);
}

TEST(DelaunayCheck, ThinRhombusIsNot) {
    auto m = fx::thin_rhombus();
    auto r = delaunay_check(m.tri, metric_from_embedding(m.tri, m.pos));
    EXPECT_EQ(r.cls, DelaunayClass::NotDelaunay);
    EXPECT_EQ(r.witness_edge, m.tri.find_edge(0, 2));
    EXPECT_NEAR(r.max_angle_sum, 2 * (pi - 2 * std::atan(0.2)), 1e-13);
}

TEST(DelaunayCheck, NoInteriorEdge) {
    auto t = Triangulation::build({{0, 1, 2}});
    auto r = delaunay_check(t, single_face_metric(t, 3, 4, 5));
    EXPECT_EQ(r.cls, DelaunayClass::UniformlyDelaunay);
    EXPECT_EQ(r.witness_edge, -1);
}

TEST(DelaunayCheck, AgreesWithWeightSign) {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        // Random quad split by a diagonal.
        std::vector<Point> p;
        for (int k = 0; k < 4; ++k) p.push_back(std::polar(rng.uniform(0.3, 1.0), (k + rng.uniform(-0.3, 0.3)) * pi / 2));
        auto m = fx::make_mesh(p, {{0, 1, 2}, {0, 2, 3}});
        auto l = metric_from_embedding(m.tri, m.pos);
        const double mu = cot_weights(m.tri, l).mu[m.tri.find_edge(0, 2)];
        const bool d = delaunay_check(m.tri, l).is_delaunay();
        if (std::abs(mu) > 1e-9) EXPECT_EQ(d, mu >= -1e-12);
    }
}

TEST(ConformalChange, Examples) {
    auto m = gen_hex_patch(2);
    auto l = metric_from_embedding(m.tri, m.pos);
    std::vector<double> zero(m.tri.num_vertices(), 0.0), c(m.tri.num_vertices(), 0.3);
    EXPECT_EQ(conformal_change(m.tri, l, zero).length, l.length);
    auto lc = conformal_change(m.tri, l, c);
    for (int e = 0; e < m.tri.num_edges(); ++e) EXPECT_NEAR(lc.length[e], std::exp(0.3) * l.length[e], 1e-15);

    auto t = Triangulation::build({{0, 1, 2}});
    auto l1 = single_face_metric(t, 1, 1, 1);
    std::vector<double> u{0, 2 * std::log(2.0), 0};
    EXPECT_NEAR(conformal_change(t, l1, u).length[t.find_edge(0, 1)], 2.0, 1e-15);
}

TEST(ConformalChange, ViolationCarriesMetric) {
    auto t = Triangulation::build({{0, 1, 2}});
    auto l = single_face_metric(t, 1, 1, 1);
    std::vector<double> u{3, 3, -3};
    try {
        conformal_change(t, l, u);
        FAIL();
    } catch (const TriangleInequalityError& e) {
        EXPECT_NEAR(e.metric().length[t.find_edge(0, 1)], std::exp(3.0), 1e-12);
    }
}

TEST(ConformalChange, Composition) {
    auto m = gen_random_delaunay_disk(40, 3, regular_disk_options());
    auto l = metric_from_embedding(m.tri, m.pos);
    SplitMix64 rng(4);
    std::vector<double> u(40), v(40), w(40);
    for (int i = 0; i < 40; ++i) {
        u[i] = rng.uniform(-0.05, 0.05);
        v[i] = rng.uniform(-0.05, 0.05);
        w[i] = u[i] + v[i];
    }
    auto a = conformal_change(m.tri, conformal_change(m.tri, l, u), v);
    auto b = conformal_change(m.tri, l, w);
    for (int e = 0; e < m.tri.num_edges(); ++e) EXPECT_NEAR(a.length[e], b.length[e], 1e-14 * b.length[e]);
}

TEST(Curvature, Examples) {
    auto m = gen_hex_patch(3);
    auto k = curvature(m.tri, metric_from_embedding(m.tri, m.pos));
    EXPECT_LT(max_interior_curvature(m.tri, k), 1e-13);

    auto fan = fx::regular_fan(5, 1.0);
    // Equilateral pentagon fan: every edge has unit length.
    PLMetric l{std::vector<double>(fan.tri.num_edges(), 1.0)};
    EXPECT_NEAR(curvature(fan.tri, l)[0], pi / 3, 1e-14);
}

TEST(Curvature, GaussBonnetAndScaling) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto m = gen_random_delaunay_disk(50, seed);
        auto l = metric_from_embedding(m.tri, m.pos);
        auto k = curvature(m.tri, l);
        double s = 0;
        for (double x : k) s += x;
        EXPECT_NEAR(s, 2 * pi, 1e-11);
        PLMetric l3 = l;
        for (double& x : l3.length) x *= 3.7;
        auto k3 = curvature(m.tri, l3);
        for (int v = 0; v < 50; ++v) EXPECT_NEAR(k3[v], k[v], 1e-12);
    }
}

TEST(CotWeights, Examples) {
    auto pair = fx::equilateral_pair();
    auto w = cot_weights(pair.tri, metric_from_embedding(pair.tri, pair.pos));
    EXPECT_NEAR(w.mu[pair.tri.find_edge(0, 1)], 1 / std::sqrt(3.0), 1e-15);
    // Boundary edge: single half-cotangent.
    EXPECT_NEAR(w.mu[pair.tri.find_edge(0, 2)], 0.5 / std::sqrt(3.0), 1e-15);

    auto sq = fx::square_diagonal();
    EXPECT_NEAR(cot_weights(sq.tri, metric_from_embedding(sq.tri, sq.pos)).mu[sq.tri.find_edge(0, 2)], 0.0, 1e-15);

    auto th = fx::thin_rhombus();
    EXPECT_LT(cot_weights(th.tri, metric_from_embedding(th.tri, th.pos)).mu[th.tri.find_edge(0, 2)], 0.0);
}

TEST(CotWeights, NonnegativeOnDelaunay) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto m = gen_random_delaunay_disk(100, seed);
        auto w = cot_weights(m.tri, metric_from_embedding(m.tri, m.pos));
        for (int e = 0; e < m.tri.num_edges(); ++e)
            if (!m.tri.is_boundary_edge(e)) EXPECT_GE(w.mu[e], -1e-12);
    }
}

TEST(Jacobian, RowSumsAndSymmetry) {
    auto m = gen_hex_patch(3);
    auto l = metric_from_embedding(m.tri, m.pos);
    std::vector<double> u(m.tri.num_vertices(), 0.0);
    Eigen::MatrixXd j = Eigen::MatrixXd(curvature_jacobian(m.tri, l, u));
    for (int i : m.tri.interior_vertices()) {
        EXPECT_NEAR(j.row(i).sum(), 0.0, 1e-14);
        for (int k : m.tri.interior_vertices()) EXPECT_NEAR(j(i, k), j(k, i), 1e-15);
    }
    for (int i : m.tri.boundary_vertices()) EXPECT_EQ(j.row(i).norm(), 0.0);
}

TEST(Jacobian, FiniteDifferences) {
    constexpr double h = 1e-5;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto m = gen_random_delaunay_disk(50, seed, regular_disk_options());
        auto l = metric_from_embedding(m.tri, m.pos);
        SplitMix64 rng(seed + 100);
        std::vector<double> u(50);
        for (double& x : u) x = rng.uniform(-0.005, 0.005);
        Eigen::MatrixXd j = Eigen::MatrixXd(curvature_jacobian(m.tri, l, u));
        double worst = 0;
        for (int c = 0; c < 50; ++c) {
            auto up = u, dn = u;
            up[c] += h;
            dn[c] -= h;
            auto kp = curvature(m.tri, conformal_change(m.tri, l, up));
            auto kd = curvature(m.tri, conformal_change(m.tri, l, dn));
            for (int i : m.tri.interior_vertices()) worst = std::max(worst, std::abs((kp[i] - kd[i]) / (2 * h) - j(i, c)));
        }
        EXPECT_LE(worst, 1e-6) << "seed " << seed;
    }
}
