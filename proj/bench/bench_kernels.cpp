// Serial reference kernels vs the OpenMP versions.
// Run with OMP_NUM_THREADS=<k> to vary the thread count.

#include <benchmark/benchmark.h>

#include "segpipe/fcm.hpp"
#include "segpipe/histogram_eq.hpp"
#include "segpipe/median_filter.hpp"
#include "segpipe/synth.hpp"

using namespace segpipe;

namespace {

GrayImage noisy_scene(std::size_t side) {
    return synth::add_salt_and_pepper(synth::two_region(side, side, 60, 190).image, 0.05, 1);
}

FeatureSet gray_features(const GrayImage& img) {
    std::vector<double> v(img.pixels().begin(), img.pixels().end());
    return make_features(v);
}

void BM_HistogramSerial(benchmark::State& state) {
    const GrayImage img = synth::random_image(state.range(0), state.range(0), 255, 3);
    for (auto _ : state) benchmark::DoNotOptimize(serial::compute_histogram(img));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}

void BM_HistogramParallel(benchmark::State& state) {
    const GrayImage img = synth::random_image(state.range(0), state.range(0), 255, 3);
    for (auto _ : state) benchmark::DoNotOptimize(compute_histogram(img));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}

void BM_MedianSerial(benchmark::State& state) {
    const GrayImage img = noisy_scene(static_cast<std::size_t>(state.range(0)));
    const WindowSpec w(static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(serial::median_filter(img, w));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}

void BM_MedianParallel(benchmark::State& state) {
    const GrayImage img = noisy_scene(static_cast<std::size_t>(state.range(0)));
    const WindowSpec w(static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(median_filter(img, w));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}

void BM_FcmStepSerial(benchmark::State& state) {
    const FeatureSet x = gray_features(noisy_scene(static_cast<std::size_t>(state.range(0))));
    const MembershipMatrix u = init_memberships(x.rows(), 3, 0);
    for (auto _ : state) {
        const Centers c = serial::update_centers(x, u, 2.0);
        benchmark::DoNotOptimize(serial::update_memberships(x, c, 2.0));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.rows()));
}

void BM_FcmStepParallel(benchmark::State& state) {
    const FeatureSet x = gray_features(noisy_scene(static_cast<std::size_t>(state.range(0))));
    const MembershipMatrix u = init_memberships(x.rows(), 3, 0);
    for (auto _ : state) {
        const Centers c = update_centers(x, u, 2.0);
        benchmark::DoNotOptimize(update_memberships(x, c, 2.0));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.rows()));
}

void BM_FcmClusterSerial(benchmark::State& state) {
    const FeatureSet x = gray_features(noisy_scene(static_cast<std::size_t>(state.range(0))));
    FcmConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(serial::fcm_cluster(x, cfg));
}

void BM_FcmClusterParallel(benchmark::State& state) {
    const FeatureSet x = gray_features(noisy_scene(static_cast<std::size_t>(state.range(0))));
    FcmConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(fcm_cluster(x, cfg));
}

}  // namespace

BENCHMARK(BM_HistogramSerial)->Arg(256)->Arg(1024);
BENCHMARK(BM_HistogramParallel)->Arg(256)->Arg(1024);
BENCHMARK(BM_MedianSerial)->Args({256, 3})->Args({256, 7})->Args({1024, 3});
BENCHMARK(BM_MedianParallel)->Args({256, 3})->Args({256, 7})->Args({1024, 3});
BENCHMARK(BM_FcmStepSerial)->Arg(128)->Arg(512);
BENCHMARK(BM_FcmStepParallel)->Arg(128)->Arg(512);
BENCHMARK(BM_FcmClusterSerial)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FcmClusterParallel)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
