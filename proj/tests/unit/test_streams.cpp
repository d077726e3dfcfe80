#include "camscout/hls.hpp"
#include "camscout/mjpeg.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace camscout;
using camscout::test::ScriptedFetcher;
using camscout::test::solid_jpeg;

namespace {

std::string part(const std::string& boundary, const std::string& type, const std::string& body,
                 bool with_length = true) {
    std::string out = "--" + boundary + "\r\nContent-Type: " + type + "\r\n";
    if (with_length) out += "Content-Length: " + std::to_string(body.size()) + "\r\n";
    return out + "\r\n" + body + "\r\n";
}

}  // namespace

TEST_CASE("multipart boundary parameter") {
    CHECK(multipart_boundary("multipart/x-mixed-replace; boundary=frame") == "frame");
    CHECK(multipart_boundary("multipart/x-mixed-replace;boundary=\"a b\"") == "a b");
    CHECK(multipart_boundary("Multipart/X-Mixed-Replace; charset=x; BOUNDARY=--myb") == "--myb");
    CHECK_FALSE(multipart_boundary("image/jpeg"));
}

TEST_CASE("multipart reader handles length-delimited and delimiter-only parts") {
    const std::string a = solid_jpeg({255, 0, 0}), b = solid_jpeg({0, 255, 0});
    for (bool with_length : {true, false}) {
        CAPTURE(with_length);
        const std::string stream =
            "preamble\r\n" + part("bnd", "image/jpeg", a, with_length) + part("bnd", "image/jpeg", b, with_length) +
            "--bnd--\r\n";
        for (std::size_t chunk : {std::size_t{1}, std::size_t{5}, std::size_t{4096}}) {
            MultipartReader reader("bnd");
            std::vector<MultipartPart> parts;
            for (std::size_t off = 0; off < stream.size(); off += chunk) {
                reader.feed(std::string_view(stream).substr(off, chunk));
                while (auto p = reader.next_part()) parts.push_back(std::move(*p));
            }
            REQUIRE(parts.size() == 2);
            CHECK(as_jpeg_frame(parts[0]) == a);
            CHECK(as_jpeg_frame(parts[1]) == b);
            CHECK(parts[0].content_type == "image/jpeg");
            CHECK(reader.finished());
        }
    }
}

TEST_CASE("as_jpeg_frame requires JPEG framing and type") {
    const std::string jpeg = solid_jpeg({1, 2, 3});
    CHECK(as_jpeg_frame({"image/jpeg", jpeg + "\r\n\r\n"}) == jpeg);
    CHECK_FALSE(as_jpeg_frame({"image/jpeg", jpeg.substr(0, jpeg.size() - 2)}));
    CHECK_FALSE(as_jpeg_frame({"text/plain", jpeg}));
    CHECK_FALSE(as_jpeg_frame({"image/jpeg", "hello"}));
}

TEST_CASE("first valid frame wins over a corrupt first part") {
    const std::string good = solid_jpeg({10, 20, 30});
    const std::string corrupt = good.substr(0, good.size() / 2);
    const std::string body = part("f", "image/jpeg", corrupt) + part("f", "image/jpeg", good);
    const auto r = first_jpeg_frame("multipart/x-mixed-replace; boundary=f", body);
    REQUIRE(r.ok());
    CHECK(*r.frame == good);
}

TEST_CASE("frame extraction errors") {
    const std::string jpeg = solid_jpeg({1, 1, 1});
    auto r = first_jpeg_frame("image/jpeg", jpeg);
    CHECK(r.error == FrameError::NotMultipart);
    CHECK(r.error_kind() == "non_multipart");

    r = first_jpeg_frame("multipart/x-mixed-replace", jpeg);
    CHECK(r.error == FrameError::BoundaryNotFound);

    r = first_jpeg_frame("multipart/x-mixed-replace; boundary=zzz", "no delimiters in here at all");
    CHECK(r.error == FrameError::BoundaryNotFound);

    r = first_jpeg_frame("multipart/x-mixed-replace; boundary=f", part("f", "image/jpeg", "not a jpeg"));
    CHECK(r.error == FrameError::FrameParse);
}

TEST_CASE("sample_mjpeg_frame over a streamed response") {
    ScriptedFetcher fetcher;
    fetcher.chunk_size = 13;
    const std::string frame1 = solid_jpeg({200, 10, 10}), frame2 = solid_jpeg({10, 200, 10});
    const std::string url = "http://a.example/video.mjpg";
    fetcher.set(url, {200, "multipart/x-mixed-replace; boundary=cam",
                      part("cam", "image/jpeg", frame1) + part("cam", "image/jpeg", frame2)});
    auto r = sample_mjpeg_frame(url, fetcher, {});
    REQUIRE(r.ok());
    CHECK(*r.frame == frame1);

    fetcher.set(url, {200, "image/jpeg", frame1});
    r = sample_mjpeg_frame(url, fetcher, {});
    CHECK(r.error_kind() == "non_multipart");

    fetcher.set(url, {503, "text/plain", "busy"});
    r = sample_mjpeg_frame(url, fetcher, {});
    CHECK(r.error_kind() == "http_status");

    r = sample_mjpeg_frame("http://down.example/video.mjpg", fetcher, {});
    CHECK(r.error_kind() == "connect");
}

TEST_CASE("parse media playlist") {
    const auto p = parse_playlist(
        "#EXTM3U\n#EXT-X-VERSION:3\n#EXT-X-TARGETDURATION:4\n#EXT-X-MEDIA-SEQUENCE:1041\n"
        "#EXTINF:4.000,\nseg1041.ts\n#EXTINF:3.5,title\nseg1042.ts\n\n# comment\n#EXT-X-ENDLIST\n");
    CHECK_FALSE(p.is_master);
    CHECK(p.media_sequence == 1041);
    REQUIRE(p.target_duration);
    CHECK(*p.target_duration == 4.0);
    REQUIRE(p.segments.size() == 2);
    CHECK(p.segments[0].uri == "seg1041.ts");
    CHECK(p.segments[1].duration == 3.5);
    CHECK(p.end_list);
    CHECK(latest_segment_url(p, "http://a.example/live/index.m3u8") == "http://a.example/live/seg1042.ts");
}

TEST_CASE("parse master playlist and CRLF input") {
    const auto p = parse_playlist(
        "\xEF\xBB\xBF#EXTM3U\r\n#EXT-X-STREAM-INF:BANDWIDTH=1280000,RESOLUTION=640x360\r\nlow/index.m3u8\r\n"
        "#EXT-X-STREAM-INF:BANDWIDTH=2560000\r\nhigh/index.m3u8\r\n");
    CHECK(p.is_master);
    REQUIRE(p.variants.size() == 2);
    CHECK(p.variants[0].uri == "low/index.m3u8");
    CHECK(p.variants[0].bandwidth == 1280000);
    CHECK_FALSE(latest_segment_url(p, "http://a.example/m.m3u8"));
}

TEST_CASE("non-playlists are rejected") {
    CHECK_THROWS_AS(parse_playlist("<html>nope</html>"), PlaylistParseError);
    CHECK_THROWS_AS(parse_playlist(""), PlaylistParseError);
    CHECK_THROWS_AS(parse_playlist("#EXTM3U\n#EXT-X-MEDIA-SEQUENCE:abc\n"), PlaylistParseError);
}

TEST_CASE("HLS liveness from two playlist fetches") {
    ScriptedFetcher fetcher;
    const std::string url = "http://a.example/live.m3u8";
    const auto media = [](int seq) {
        return "#EXTM3U\n#EXT-X-TARGETDURATION:4\n#EXT-X-MEDIA-SEQUENCE:" + std::to_string(seq) +
               "\n#EXTINF:4,\ns" + std::to_string(seq) + ".ts\n#EXTINF:4,\ns" + std::to_string(seq + 1) + ".ts\n";
    };
    const std::string type = "application/vnd.apple.mpegurl";

    fetcher.script(url, {{200, type, media(10)}, {200, type, media(12)}});
    auto v = check_hls_live(url, Millis{1}, fetcher, {});
    CHECK(v.label == LivenessLabel::Live);
    REQUIRE(v.playlist);
    CHECK(v.playlist->first_sequence == 10);
    CHECK(v.playlist->second_sequence == 12);

    fetcher.set(url, {200, type, media(10)});
    CHECK(check_hls_live(url, Millis{1}, fetcher, {}).label == LivenessLabel::Static);

    fetcher.set(url, {200, "text/html", "<html>not a playlist</html>"});
    v = check_hls_live(url, Millis{1}, fetcher, {});
    CHECK(v.label == LivenessLabel::Indeterminate);
    CHECK_FALSE(v.note.empty());

    fetcher.set(url, {404, "text/plain", ""});
    CHECK(check_hls_live(url, Millis{1}, fetcher, {}).label == LivenessLabel::Indeterminate);

    const std::string master = "http://a.example/master.m3u8";
    fetcher.set(master, {200, type, "#EXTM3U\n#EXT-X-STREAM-INF:BANDWIDTH=1\nvariant/live.m3u8\n"});
    fetcher.script("http://a.example/variant/live.m3u8", {{200, type, media(1)}, {200, type, media(2)}});
    CHECK(check_hls_live(master, Millis{1}, fetcher, {}).label == LivenessLabel::Live);
}
