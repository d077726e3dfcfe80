#include "camscout/crawler.hpp"
#include "camscout/hls.hpp"
#include "camscout/mjpeg.hpp"
#include "camscout/url.hpp"

#include <benchmark/benchmark.h>

#include <string>

namespace {

using namespace camscout;

std::string synthetic_page(int links) {
    std::string html = "<html><body>";
    for (int i = 0; i < links; ++i) {
        html += "<p>camera " + std::to_string(i) + "</p>";
        html += "<img src=\"/cams/" + std::to_string(i) + "/snapshot.jpg\">";
        html += "<a href=\"/pages/" + std::to_string(i) + ".html\">more</a>";
        if (i % 10 == 0) html += "<a href=\"/live/" + std::to_string(i) + "/index.m3u8\">hls</a>";
    }
    return html + "</body></html>";
}

void BM_NormalizeUrl(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(normalize_url("../cams/./07/%7ejpg/snap.JPG?b=2#frag", "HTTP://Example.COM:80/a/b/c"));
}
BENCHMARK(BM_NormalizeUrl);

void BM_ExtractCandidates(benchmark::State& state) {
    const std::string html = synthetic_page(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(extract_candidate_links(html, "http://example.com/"));
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(html.size()));
}
BENCHMARK(BM_ExtractCandidates)->Arg(10)->Arg(1000);

void BM_ExtractPageLinks(benchmark::State& state) {
    const std::string html = synthetic_page(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(extract_page_links(html, "http://example.com/"));
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(html.size()));
}
BENCHMARK(BM_ExtractPageLinks)->Arg(10)->Arg(1000);

void BM_ParsePlaylist(benchmark::State& state) {
    std::string text = "#EXTM3U\n#EXT-X-VERSION:3\n#EXT-X-TARGETDURATION:4\n#EXT-X-MEDIA-SEQUENCE:1000\n";
    for (int i = 0; i < state.range(0); ++i) text += "#EXTINF:4.000,\nseg" + std::to_string(1000 + i) + ".ts\n";
    for (auto _ : state) benchmark::DoNotOptimize(parse_playlist(text));
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParsePlaylist)->Arg(6)->Arg(600);

void BM_MultipartReader(benchmark::State& state) {
    const std::string jpeg = "\xFF\xD8" + std::string(20000, 'x') + "\xFF\xD9";
    std::string stream;
    for (int i = 0; i < 10; ++i)
        stream += "--b\r\nContent-Type: image/jpeg\r\n\r\n" + jpeg + "\r\n";
    const auto chunk = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        MultipartReader reader("b");
        std::size_t parts = 0;
        for (std::size_t off = 0; off < stream.size(); off += chunk) {
            reader.feed(std::string_view(stream).substr(off, chunk));
            while (reader.next_part()) ++parts;
        }
        benchmark::DoNotOptimize(parts);
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(stream.size()));
}
BENCHMARK(BM_MultipartReader)->Arg(512)->Arg(16384);

}  // namespace

BENCHMARK_MAIN();
