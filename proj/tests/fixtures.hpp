#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "dcg/complex.hpp"
#include "dcg/error.hpp"
#include "dcg/harmonic.hpp"
#include "dcg/random.hpp"

namespace fx {

using dcg::Face;
using dcg::Mesh;
using dcg::Point;

inline Mesh make_mesh(std::vector<Point> pos, std::vector<Face> faces) {
    Mesh m;
    m.pos.z = std::move(pos);
    m.tri = dcg::Triangulation::build(std::move(faces));
    return m;
}

inline Mesh single_triangle(Point a, Point b, Point c) { return make_mesh({a, b, c}, {{0, 1, 2}}); }

/// Unit square split by the diagonal 0-2.
inline Mesh square_diagonal() { return make_mesh({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}}); }

/// Flat rhombus split by its long diagonal 0-2; the two opposite angles are obtuse.
inline Mesh thin_rhombus() { return make_mesh({{0, 0}, {5, -1}, {10, 0}, {5, 1}}, {{0, 1, 2}, {0, 2, 3}}); }

/// Two unit equilateral triangles sharing edge 0-1.
inline Mesh equilateral_pair() {
    const double h = std::numbers::sqrt3 / 2;
    return make_mesh({{0, 0}, {1, 0}, {0.5, h}, {0.5, -h}}, {{0, 1, 2}, {1, 0, 3}});
}

/// Regular fan: center 0 at `c`, k rim vertices at distance `s`.
inline Mesh regular_fan(int k, double s, Point c = {0, 0}, double phase = 0.0) {
    std::vector<Point> pos{c};
    std::vector<Face> faces;
    for (int j = 0; j < k; ++j) {
        pos.push_back(c + std::polar(s, phase + 2 * std::numbers::pi * j / k));
        faces.push_back({0, 1 + j, 1 + (j + 1) % k});
    }
    return make_mesh(pos, faces);
}

/// Random star-shaped fan around the origin with k spokes.
inline Mesh random_fan(dcg::SplitMix64& rng, int k, double rmin, double rmax, double jitter) {
    std::vector<Point> pos{{0, 0}};
    std::vector<Face> faces;
    for (int j = 0; j < k; ++j) {
        const double a = 2 * std::numbers::pi * (j + rng.uniform(-jitter, jitter)) / k;
        pos.push_back(std::polar(rng.uniform(rmin, rmax), a));
        faces.push_back({0, 1 + j, 1 + (j + 1) % k});
    }
    return make_mesh(pos, faces);
}

/// rows x cols grid graph with weights from `w`.
template <class W>
dcg::WeightedGraph grid_graph(int rows, int cols, W&& w) {
    std::vector<dcg::Edge> e;
    std::vector<double> mu;
    auto id = [&](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) {
                e.emplace_back(id(r, c), id(r, c + 1));
                mu.push_back(w());
            }
            if (r + 1 < rows) {
                e.emplace_back(id(r, c), id(r + 1, c));
                mu.push_back(w());
            }
        }
    return dcg::WeightedGraph::from_edges(rows * cols, e, mu);
}

inline dcg::ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const dcg::Error& e) {
        return e.code();
    }
    return static_cast<dcg::ErrorCode>(-1);
}

}  // namespace fx
