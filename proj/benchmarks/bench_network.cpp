#include "texnet/netbuild.hpp"
#include "texnet/render.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace {

std::vector<texnet::FeatureVector> random_class(std::size_t n, std::size_t dims) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<texnet::FeatureVector> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].sample_id = i;
        out[i].label = 1;
        out[i].values.resize(dims);
        for (auto& x : out[i].values) {
            x = dist(rng);
        }
    }
    return out;
}

void BM_PairwiseDistances(benchmark::State& state) {
    const auto pts = random_class(static_cast<std::size_t>(state.range(0)), 24);
    for (auto _ : state) {
        benchmark::DoNotOptimize(texnet::pairwise_distances(pts, texnet::Scaling::ZScore));
    }
}
BENCHMARK(BM_PairwiseDistances)->Arg(50)->Arg(200)->Arg(500);

void BM_MedianFilter(benchmark::State& state) {
    const auto g = texnet::pairwise_distances(random_class(static_cast<std::size_t>(state.range(0)), 15));
    for (auto _ : state) {
        benchmark::DoNotOptimize(texnet::median_filter(g));
    }
}
BENCHMARK(BM_MedianFilter)->Arg(50)->Arg(500);

void BM_RasterizeHeatmap(benchmark::State& state) {
    const auto g = texnet::pairwise_distances(random_class(static_cast<std::size_t>(state.range(0)), 15));
    const auto m = texnet::adjacency_matrix(g, false);
    for (auto _ : state) {
        benchmark::DoNotOptimize(texnet::rasterize_heatmap(m, {.vmin = {}, .vmax = {}, .invert = false, .scale = 4}));
    }
}
BENCHMARK(BM_RasterizeHeatmap)->Arg(50)->Arg(500);

} // namespace
