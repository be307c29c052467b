#include "texnet/glcm.hpp"
#include "texnet/histfeat.hpp"
#include "texnet/ingest.hpp"

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

namespace {

texnet::GrayImage random_gray(std::size_t side, int levels, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<std::uint8_t> px(side * side);
    for (auto& p : px) {
        p = static_cast<std::uint8_t>(rng() % static_cast<unsigned>(levels));
    }
    return texnet::GrayImage(side, side, std::move(px), levels);
}

void BM_ComputeGlcm(benchmark::State& state) {
    const auto img = random_gray(static_cast<std::size_t>(state.range(0)), 256, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(texnet::compute_glcm(img, {1, texnet::Angle::Deg45}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_ComputeGlcm)->Arg(64)->Arg(256)->Arg(512);

void BM_GlcmFeatureVector(benchmark::State& state) {
    const auto img = random_gray(256, static_cast<int>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(texnet::glcm_feature_vector(img));
    }
}
BENCHMARK(BM_GlcmFeatureVector)->Arg(8)->Arg(64)->Arg(256);

void BM_HistFeatureVector(benchmark::State& state) {
    const auto side = static_cast<std::size_t>(state.range(0));
    std::mt19937 rng(3);
    std::vector<std::uint8_t> r(side * side), g(side * side), b(side * side);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = static_cast<std::uint8_t>(rng());
        g[i] = static_cast<std::uint8_t>(rng());
        b[i] = static_cast<std::uint8_t>(rng());
    }
    const texnet::RgbImage img(side, side, r, g, b);
    for (auto _ : state) {
        benchmark::DoNotOptimize(texnet::hist_feature_vector(img));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_HistFeatureVector)->Arg(256)->Arg(512);

void BM_ToGrayscale(benchmark::State& state) {
    const auto img = texnet::RgbImage::filled(512, 512, 10, 200, 90);
    for (auto _ : state) {
        benchmark::DoNotOptimize(texnet::to_grayscale(img));
    }
}
BENCHMARK(BM_ToGrayscale);

} // namespace

BENCHMARK_MAIN();
