#include "camscout/registry.hpp"

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

namespace {

using namespace camscout;

std::vector<std::string> event_lines(int cameras, int rewrites) {
    std::vector<std::string> lines;
    for (int r = 0; r < rewrites; ++r) {
        for (int i = 0; i < cameras; ++i) {
            CameraRecord rec;
            rec.endpoint = "http://cams.example/" + std::to_string(i) + "/snap.jpg";
            rec.source_page = "http://cams.example/";
            rec.enabled = r % 2 == 1;
            rec.verdict.label = rec.enabled ? LivenessLabel::Live : LivenessLabel::Indeterminate;
            lines.push_back(encode_registry_line(RegistryEvent::Upsert, canonicalize(rec)));
        }
    }
    return lines;
}

void BM_DeriveCameraId(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(derive_camera_id("http://cams.example/17/snap.jpg?size=large"));
}
BENCHMARK(BM_DeriveCameraId);

void BM_Replay(benchmark::State& state) {
    const auto lines = event_lines(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(replay(lines));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lines.size()));
}
BENCHMARK(BM_Replay)->Arg(100)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
