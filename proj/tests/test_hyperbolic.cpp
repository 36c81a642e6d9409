#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dcg/hyperbolic.hpp"
#include "dcg/metric.hpp"
#include "fixtures.hpp"

using namespace dcg;
using fx::code_of;

namespace {

constexpr double kPi = std::numbers::pi;

DiskEmbedding scaled(const PlanarEmbedding& p, double s, Point shift = {0, 0}) {
    DiskEmbedding d = p;
    for (auto& z : d.z) z = shift + s * z;
    return d;
}

// Moebius map of the plane. Two images of the same complex are discrete
// conformal with u_i = ln |M'(z_i)|.
struct Moebius {
    Point a, b, c, d;
    Point operator()(Point z) const { return (a * z + b) / (c * z + d); }
    double log_deriv(Point z) const { return std::log(std::abs(a * d - b * c) / std::norm(c * z + d)); }
};

Moebius random_moebius(SplitMix64& rng) {
    // Close to a contraction so that images of small fans stay inside the disk.
    return Moebius{Point(rng.uniform(0.5, 0.9), rng.uniform(-0.1, 0.1)), Point(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2)),
                   Point(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4)), Point(1, 0)};
}

}  // namespace

TEST(HypDistance, Examples) {
    EXPECT_EQ(hyp_distance({0.3, -0.2}, {0.3, -0.2}), 0.0);
    EXPECT_NEAR(hyp_distance({0, 0}, {0.5, 0}), std::log(3.0), 1e-15);
    const Point z1(0.2, 0.5), z2(-0.6, 0.1);
    const Point rot = std::polar(1.0, 1.234);
    EXPECT_NEAR(hyp_distance(rot * z1, rot * z2), hyp_distance(z1, z2), 1e-12);
    EXPECT_EQ(hyp_distance(z1, z2), hyp_distance(z2, z1));
    EXPECT_EQ(code_of([] { hyp_distance({1, 0}, {0, 0}); }), ErrorCode::OutsideDisk);
    EXPECT_EQ(code_of([] { hyp_distance({0, 0}, {0.8, 0.7}); }), ErrorCode::OutsideDisk);
}

TEST(HypDistance, TriangleInequality) {
    SplitMix64 rng(11);
    auto pt = [&] { return std::polar(std::sqrt(rng.uniform(0, 0.99)), rng.uniform(0, 2 * kPi)); };
    for (int i = 0; i < 2000; ++i) {
        const Point a = pt(), b = pt(), c = pt();
        EXPECT_LE(hyp_distance(a, c), hyp_distance(a, b) + hyp_distance(b, c) + 1e-12);
    }
}

TEST(PHMetric, SmallScaleRatioIsTwo) {
    auto m = fx::single_triangle({0, 0}, {1, 0}, std::polar(1.0, kPi / 3));
    const double t = 1e-4;
    auto lh = ph_from_disk_embedding(m.tri, scaled(m.pos, t, {0.0, 0.0}));
    for (double x : lh.length) {
        EXPECT_GE(x / t, 2 - 1e-3);
        EXPECT_LE(x / t, 2 + 1e-3);
    }
    EXPECT_TRUE(ph_triangle_inequality(m.tri, lh));
}

TEST(PHMetric, ReflectionSymmetry) {
    const double r = 0.6;
    auto m = fx::single_triangle({0, 0}, {r, 0}, std::polar(r, kPi / 3));
    auto lh = ph_from_disk_embedding(m.tri, m.pos);
    // Edges 0-1 and 0-2 swap under the reflection through angle pi/6.
    EXPECT_NEAR(lh.length[m.tri.find_edge(0, 1)], lh.length[m.tri.find_edge(0, 2)], 1e-15);
}

TEST(PHMetric, Errors) {
    auto m = fx::single_triangle({0, 0}, {1.0, 0}, {0, 0.5});
    EXPECT_EQ(code_of([&] { ph_from_disk_embedding(m.tri, m.pos); }), ErrorCode::OutsideDisk);
    auto flat = fx::single_triangle({0, 0}, {0.2, 0}, {0.4, 0});
    EXPECT_EQ(code_of([&] { ph_from_disk_embedding(flat.tri, flat.pos); }), ErrorCode::DegenerateFace);
    auto cw = fx::single_triangle({0, 0}, {0, 0.3}, {0.3, 0});
    EXPECT_EQ(code_of([&] { ph_from_disk_embedding(cw.tri, cw.pos); }), ErrorCode::DegenerateFace);
}

TEST(HypConformality, IdentityAndConstant) {
    auto m = gen_hex_patch(2);
    auto lh = ph_from_disk_embedding(m.tri, scaled(m.pos, 0.2));
    auto same = hyp_conformality_check(m.tri, lh, lh);
    ASSERT_TRUE(same.u);
    for (double x : *same.u) EXPECT_NEAR(x, 0.0, 1e-14);

    const double c = 0.37;
    PHMetric lh2 = lh;
    for (double& x : lh2.length) x = 2 * std::asinh(std::exp(c) * std::sinh(x / 2));
    auto back = hyp_conformality_check(m.tri, lh, lh2);
    ASSERT_TRUE(back.u);
    for (double x : *back.u) EXPECT_NEAR(x, c, 1e-10);
}

TEST(HypConformality, RejectsIncompatiblePair) {
    auto m = gen_hex_patch(1);
    auto lh = ph_from_disk_embedding(m.tri, scaled(m.pos, 0.3));
    SplitMix64 rng(3);
    PHMetric lh2 = lh;
    for (double& x : lh2.length) x *= 1 + rng.uniform(-0.02, 0.02);
    auto r = hyp_conformality_check(m.tri, lh, lh2);
    EXPECT_FALSE(r.u);
    EXPECT_GT(r.residual, 1e-9);
}

TEST(ConvertFactor, Examples) {
    auto m = fx::regular_fan(6, 0.4);
    std::vector<double> zero(7, 0.0);
    for (double x : convert_factor_euclidean_to_hyperbolic(zero, m.pos, m.pos)) EXPECT_EQ(x, 0.0);

    auto half = scaled(m.pos, 0.5);
    std::vector<double> u(7, std::log(0.5));
    auto uh = convert_factor_euclidean_to_hyperbolic(u, m.pos, half);
    for (int i = 0; i < 7; ++i) {
        const double expect = std::log(0.5) + std::log((1 - std::norm(m.pos[i])) / (1 - std::norm(m.pos[i] / 2.0)));
        EXPECT_NEAR(uh[i], expect, 1e-15);
    }
    auto out = m.pos;
    out.z[3] = {1.2, 0};
    EXPECT_EQ(code_of([&] { convert_factor_euclidean_to_hyperbolic(zero, m.pos, out); }), ErrorCode::OutsideDisk);
}

TEST(ConvertFactor, SatisfiesSinhRelationOnMoebiusFans) {
    SplitMix64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        auto m = fx::random_fan(rng, rng.uniform_int(4, 9), 0.05, 0.3, 0.2);
        const Moebius mob = random_moebius(rng);
        DiskEmbedding phi2 = m.pos;
        std::vector<double> u(m.pos.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            phi2.z[i] = mob(m.pos[i]);
            u[i] = mob.log_deriv(m.pos[i]);
        }
        // The Euclidean pair really is u-conformal.
        auto l = metric_from_embedding(m.tri, m.pos), l2 = metric_from_embedding(m.tri, phi2);
        auto ul = conformal_change(m.tri, l, u);
        for (int e = 0; e < m.tri.num_edges(); ++e) ASSERT_NEAR(ul.length[e], l2.length[e], 1e-13);

        auto uh = convert_factor_euclidean_to_hyperbolic(u, m.pos, phi2);
        auto lh = ph_from_disk_embedding(m.tri, m.pos), lh2 = ph_from_disk_embedding(m.tri, phi2);
        for (int e = 0; e < m.tri.num_edges(); ++e) {
            const Edge& ed = m.tri.edge(e);
            const double res = std::log(std::sinh(lh2.length[e] / 2)) - std::log(std::sinh(lh.length[e] / 2)) -
                               0.5 * (uh[ed.a] + uh[ed.b]);
            EXPECT_LE(std::abs(res), 1e-9);
        }
        auto fit = hyp_conformality_check(m.tri, lh, lh2);
        ASSERT_TRUE(fit.u);
        for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR((*fit.u)[i], uh[i], 1e-9);

        auto back = convert_factor_hyperbolic_to_euclidean(uh, m.pos, phi2);
        for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(back[i], u[i], 1e-12);
    }
}

TEST(HypConformality, MoebiusInvariance) {
    SplitMix64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = fx::random_fan(rng, 7, 0.1, 0.3, 0.2);
        const Moebius mob = random_moebius(rng);
        DiskEmbedding phi2 = m.pos;
        for (auto& z : phi2.z) z = mob(z);
        const Point a = std::polar(rng.uniform(0, 0.5), rng.uniform(0, 2 * kPi));
        const Point rot = std::polar(1.0, rng.uniform(0, 2 * kPi));
        DiskEmbedding psi = m.pos, psi2 = phi2;
        for (auto& z : psi.z) z = rot * mobius_to_origin(a, z);
        for (auto& z : psi2.z) z = rot * mobius_to_origin(a, z);
        auto r1 = hyp_conformality_check(m.tri, ph_from_disk_embedding(m.tri, m.pos), ph_from_disk_embedding(m.tri, phi2));
        auto r2 = hyp_conformality_check(m.tri, ph_from_disk_embedding(m.tri, psi), ph_from_disk_embedding(m.tri, psi2));
        ASSERT_TRUE(r1.u && r2.u);
        for (std::size_t i = 0; i < r1.u->size(); ++i) EXPECT_NEAR((*r1.u)[i], (*r2.u)[i], 1e-9);
    }
}

TEST(InducedEmbedding, RegularHexagon) {
    auto m = fx::regular_fan(6, 0.1);
    auto r = induced_hyp_embedding(m.tri, m.pos, 0, kPi / 6);
    ASSERT_EQ(r.status, InducedStatus::Feasible);
    ASSERT_EQ(r.turns.size(), 6u);
    for (double t : r.turns) EXPECT_NEAR(t, kPi / 3, 1e-12);
    EXPECT_NEAR(r.turn_sum, 2 * kPi, 1e-12);
}

TEST(InducedEmbedding, ConditionViolatedNearRim) {
    // Spoke 0.5 at |z| = 0.9 exceeds (1 - 0.81) sin(pi/6) = 0.095. The rim
    // leaves the disk, but the hypothesis is decided first.
    auto m = fx::regular_fan(6, 0.5, {0.9, 0});
    auto r = induced_hyp_embedding(m.tri, m.pos, 0, kPi / 6);
    EXPECT_EQ(r.status, InducedStatus::ConditionViolated);
    EXPECT_EQ(r.violating_spokes.size(), 6u);
    EXPECT_TRUE(r.turns.empty());
    // Just inside and just outside the bound.
    const double bound = (1 - 0.81) * std::sin(kPi / 6);
    auto in = fx::regular_fan(6, bound * (1 - 1e-9), {0.9, 0});
    EXPECT_EQ(induced_hyp_embedding(in.tri, in.pos, 0, kPi / 6).status, InducedStatus::Feasible);
    auto out = fx::regular_fan(6, bound * (1 + 1e-9), {0.9, 0});
    EXPECT_EQ(induced_hyp_embedding(out.tri, out.pos, 0, kPi / 6).status, InducedStatus::ConditionViolated);
}

TEST(InducedEmbedding, RandomSmallFans) {
    SplitMix64 rng(17);
    int feasible = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto m = fx::random_fan(rng, rng.uniform_int(5, 8), 0.004, 0.01, 0.25);
        auto shift = std::polar(rng.uniform(0, 0.05), rng.uniform(0, 2 * kPi));
        auto phi = scaled(m.pos, 1.0, shift);
        auto angles = corner_angles(m.tri, metric_from_embedding(m.tri, phi));
        const double eps = std::min(kPi / 3, min_corner(m.tri, angles).angle * (1 - 1e-9));
        if (!delaunay_check(m.tri, metric_from_embedding(m.tri, phi)).is_delaunay()) continue;
        auto r = induced_hyp_embedding(m.tri, phi, 0, eps);
        if (r.status != InducedStatus::Feasible) continue;
        ++feasible;
        for (double t : r.turns) {
            EXPECT_GT(t, 0.0);
            EXPECT_LT(t, kPi);
        }
        EXPECT_NEAR(r.turn_sum, 2 * kPi, 1e-10);
    }
    EXPECT_GT(feasible, 100);
}

TEST(InducedEmbedding, Preconditions) {
    auto m = fx::regular_fan(6, 0.1);
    EXPECT_EQ(code_of([&] { induced_hyp_embedding(m.tri, m.pos, 1, kPi / 6); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([&] { induced_hyp_embedding(m.tri, m.pos, 0, 1.2); }), ErrorCode::InvalidArgument);
    auto sq = fx::regular_fan(4, 0.1);  // corners pi/4 < pi/3
    EXPECT_EQ(code_of([&] { induced_hyp_embedding(sq.tri, sq.pos, 0, kPi / 3); }), ErrorCode::InvalidArgument);
}

TEST(HypDelaunay, Examples) {
    auto sq = fx::square_diagonal();
    EXPECT_TRUE(hyp_delaunay_check(sq.tri, scaled(sq.pos, 0.5, {-0.25, -0.25})).delaunay);
    auto hex = gen_hex_patch(3);
    EXPECT_TRUE(hyp_delaunay_check(hex.tri, scaled(hex.pos, 0.3)).delaunay);
    auto rh = fx::thin_rhombus();
    auto r = hyp_delaunay_check(rh.tri, scaled(rh.pos, 0.09, {-0.45, 0}));
    EXPECT_FALSE(r.delaunay);
    EXPECT_EQ(r.witness_edge, rh.tri.find_edge(0, 2));
}
