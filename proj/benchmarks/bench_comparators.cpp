#include "camscout/digest.hpp"
#include "camscout/liveness.hpp"
#include "camscout/mockfleet.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace camscout;

void BM_PercentDiff(benchmark::State& state) {
    const int w = static_cast<int>(state.range(0));
    const Raster a = generate_scene(1, 0, 0, w, w * 3 / 4);
    const Raster b = generate_scene(1, 0, 1, w, w * 3 / 4);
    for (auto _ : state) benchmark::DoNotOptimize(percent_diff(a, b, 10));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}
BENCHMARK(BM_PercentDiff)->Arg(160)->Arg(640)->Arg(1920);

void BM_LuminanceDiff(benchmark::State& state) {
    const int w = static_cast<int>(state.range(0));
    const Raster a = generate_scene(1, 0, 0, w, w * 3 / 4);
    const Raster b = generate_scene(1, 0, 1, w, w * 3 / 4);
    for (auto _ : state) benchmark::DoNotOptimize(luminance_diff(a, b));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}
BENCHMARK(BM_LuminanceDiff)->Arg(160)->Arg(640)->Arg(1920);

void BM_Checksum(benchmark::State& state) {
    const std::string body = generate_image(1, 0, 0, 640, 480);
    for (auto _ : state) benchmark::DoNotOptimize(sha256_hex(body));
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(body.size()));
}
BENCHMARK(BM_Checksum);

void BM_DecodeJpeg(benchmark::State& state) {
    const std::string body = generate_image(1, 0, 0, 640, 480);
    for (auto _ : state) benchmark::DoNotOptimize(decode_image(body));
}
BENCHMARK(BM_DecodeJpeg);

}  // namespace

BENCHMARK_MAIN();
