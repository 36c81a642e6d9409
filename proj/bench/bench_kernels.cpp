// Serial reference vs OpenMP kernels on hex patches of growing size.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "dcg/harmonic.hpp"
#include "dcg/kernels.hpp"
#include "dcg/metric.hpp"

namespace {

using namespace dcg;

struct Fixture {
    Mesh mesh;
    std::vector<double> lengths, angles, mu, out, u;
    std::vector<Point> image;
    WeightedGraph graph;

    explicit Fixture(int radius) : mesh(gen_hex_patch(radius)) {
        lengths = metric_from_embedding(mesh.tri, mesh.pos).length;
        angles.resize(3 * mesh.tri.num_faces());
        kernels::serial::corner_angles(mesh.tri, lengths, angles);
        mu.resize(mesh.tri.num_edges());
        kernels::serial::cot_weights(mesh.tri, angles, mu);
        graph = WeightedGraph::from_triangulation(mesh.tri, EdgeWeights{mu});
        out.resize(std::max(mesh.tri.num_vertices(), mesh.tri.num_faces()));
        u.resize(mesh.tri.num_vertices());
        for (int v = 0; v < mesh.tri.num_vertices(); ++v) {
            u[v] = std::sin(mesh.pos[v].real());
            image.push_back(mesh.pos[v] + 0.01 * mesh.pos[v] * mesh.pos[v]);
        }
    }
};

Fixture& fixture(int radius) {
    static std::vector<std::pair<int, Fixture*>> cache;
    for (auto& [r, f] : cache)
        if (r == radius) return *f;
    cache.emplace_back(radius, new Fixture(radius));
    return *cache.back().second;
}

template <bool Parallel>
void BM_CornerAngles(benchmark::State& st) {
    auto& f = fixture(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        if constexpr (Parallel)
            kernels::parallel::corner_angles(f.mesh.tri, f.lengths, f.angles);
        else
            kernels::serial::corner_angles(f.mesh.tri, f.lengths, f.angles);
        benchmark::DoNotOptimize(f.angles.data());
    }
    st.SetItemsProcessed(st.iterations() * f.mesh.tri.num_faces());
}

template <bool Parallel>
void BM_CotWeights(benchmark::State& st) {
    auto& f = fixture(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        if constexpr (Parallel)
            kernels::parallel::cot_weights(f.mesh.tri, f.angles, f.mu);
        else
            kernels::serial::cot_weights(f.mesh.tri, f.angles, f.mu);
        benchmark::DoNotOptimize(f.mu.data());
    }
    st.SetItemsProcessed(st.iterations() * f.mesh.tri.num_edges());
}

template <bool Parallel>
void BM_Curvature(benchmark::State& st) {
    auto& f = fixture(static_cast<int>(st.range(0)));
    std::span<double> k(f.out.data(), f.mesh.tri.num_vertices());
    for (auto _ : st) {
        if constexpr (Parallel)
            kernels::parallel::curvature(f.mesh.tri, f.angles, k);
        else
            kernels::serial::curvature(f.mesh.tri, f.angles, k);
        benchmark::DoNotOptimize(k.data());
    }
    st.SetItemsProcessed(st.iterations() * f.mesh.tri.num_vertices());
}

template <bool Parallel>
void BM_Laplacian(benchmark::State& st) {
    auto& f = fixture(static_cast<int>(st.range(0)));
    std::span<double> lu(f.out.data(), f.mesh.tri.num_vertices());
    for (auto _ : st) {
        if constexpr (Parallel)
            kernels::parallel::laplacian_apply(f.graph, f.u, lu);
        else
            kernels::serial::laplacian_apply(f.graph, f.u, lu);
        benchmark::DoNotOptimize(lu.data());
    }
    st.SetItemsProcessed(st.iterations() * f.mesh.tri.num_vertices());
}

template <bool Parallel>
void BM_Dilatation(benchmark::State& st) {
    auto& f = fixture(static_cast<int>(st.range(0)));
    std::span<double> d(f.out.data(), f.mesh.tri.num_faces());
    for (auto _ : st) {
        if constexpr (Parallel)
            kernels::parallel::face_dilatation(f.mesh.tri, f.mesh.pos.z, f.image, d);
        else
            kernels::serial::face_dilatation(f.mesh.tri, f.mesh.pos.z, f.image, d);
        benchmark::DoNotOptimize(d.data());
    }
    st.SetItemsProcessed(st.iterations() * f.mesh.tri.num_faces());
}

#define DCG_BENCH(fn)                                                            \
    BENCHMARK_TEMPLATE(fn, false)->Name(#fn "/serial")->Arg(16)->Arg(64)->Arg(200); \
    BENCHMARK_TEMPLATE(fn, true)->Name(#fn "/parallel")->Arg(16)->Arg(64)->Arg(200)

DCG_BENCH(BM_CornerAngles);
DCG_BENCH(BM_CotWeights);
DCG_BENCH(BM_Curvature);
DCG_BENCH(BM_Laplacian);
DCG_BENCH(BM_Dilatation);

}  // namespace

BENCHMARK_MAIN();
