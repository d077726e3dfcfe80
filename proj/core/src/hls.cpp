#include "camscout/hls.hpp"

#include "camscout/url.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <thread>

namespace camscout {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::int64_t parse_int(std::string_view v, const char* tag) {
    v = trim(v);
    std::int64_t n = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
    if (ec != std::errc{} || ptr != v.data() + v.size() || n < 0)
        throw PlaylistParseError(std::string("bad ") + tag + " value '" + std::string(v) + "'");
    return n;
}

double parse_double(std::string_view v) {
    const std::string s(trim(v));
    char* end = nullptr;
    const double d = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw PlaylistParseError("bad duration '" + s + "'");
    return d;
}

std::optional<std::int64_t> attribute_int(std::string_view attrs, std::string_view key) {
    std::size_t pos = 0;
    while ((pos = attrs.find(key, pos)) != std::string_view::npos) {
        const bool at_start = pos == 0 || attrs[pos - 1] == ',';
        const auto eq = pos + key.size();
        if (at_start && eq < attrs.size() && attrs[eq] == '=') {
            auto value = attrs.substr(eq + 1);
            value = value.substr(0, value.find(','));
            std::int64_t n = 0;
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
            if (ec == std::errc{}) return n;
            return std::nullopt;
        }
        pos = eq;
    }
    return std::nullopt;
}

}  // namespace

HlsPlaylist parse_playlist(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    HlsPlaylist playlist;
    bool header_seen = false;
    bool pending_variant = false;
    std::optional<std::int64_t> pending_bandwidth;
    std::optional<double> pending_duration;

    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        const auto line = trim(text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos));
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        if (line.empty()) continue;

        if (!header_seen) {
            if (line != "#EXTM3U") throw PlaylistParseError("missing #EXTM3U header");
            header_seen = true;
            continue;
        }
        if (line.starts_with("#")) {
            if (line.starts_with("#EXT-X-MEDIA-SEQUENCE:")) {
                playlist.media_sequence = parse_int(line.substr(22), "EXT-X-MEDIA-SEQUENCE");
            } else if (line.starts_with("#EXT-X-TARGETDURATION:")) {
                playlist.target_duration = parse_double(line.substr(22));
            } else if (line.starts_with("#EXTINF:")) {
                auto value = line.substr(8);
                pending_duration = parse_double(value.substr(0, value.find(',')));
            } else if (line.starts_with("#EXT-X-STREAM-INF:")) {
                pending_variant = true;
                pending_bandwidth = attribute_int(line.substr(18), "BANDWIDTH");
            } else if (line == "#EXT-X-ENDLIST") {
                playlist.end_list = true;
            }
            continue;
        }
        if (pending_variant) {
            playlist.is_master = true;
            playlist.variants.push_back({std::string(line), pending_bandwidth});
            pending_variant = false;
            pending_bandwidth.reset();
        } else {
            playlist.segments.push_back({std::string(line), pending_duration.value_or(0.0)});
            pending_duration.reset();
        }
    }
    if (!header_seen) throw PlaylistParseError("empty playlist");
    if (playlist.is_master && !playlist.segments.empty())
        throw PlaylistParseError("playlist mixes variants and segments");
    return playlist;
}

std::optional<std::string> latest_segment_url(const HlsPlaylist& playlist, std::string_view playlist_url) {
    if (playlist.segments.empty()) return std::nullopt;
    try {
        return normalize_url(playlist.segments.back().uri, playlist_url);
    } catch (const UrlError&) {
        return std::nullopt;
    }
}

MediaPlaylistFetch fetch_media_playlist(const std::string& url, Fetcher& fetcher,
                                        const FetchOptions& options) {
    MediaPlaylistFetch out;
    out.url = url;
    // One hop from master to media playlist; nested masters are rejected.
    for (int hop = 0; hop < 2; ++hop) {
        FetchResult r = fetcher.get(out.url, options);
        if (!r.ok()) {
            out.fetch_error = r.error;
            out.error = std::string(to_string(r.error)) + ": " + r.message;
            return out;
        }
        HlsPlaylist playlist;
        try {
            playlist = parse_playlist(r.body);
        } catch (const PlaylistParseError& e) {
            out.error = std::string("parse: ") + e.what();
            return out;
        }
        if (!playlist.is_master) {
            out.playlist = std::move(playlist);
            return out;
        }
        if (hop == 1) break;
        try {
            out.url = normalize_url(playlist.variants.front().uri, out.url);
        } catch (const UrlError& e) {
            out.error = std::string("parse: bad variant URI: ") + e.what();
            return out;
        }
    }
    out.error = "parse: master playlist points at another master playlist";
    return out;
}

LivenessVerdict check_hls_live(const std::string& playlist_url, Millis interval, Fetcher& fetcher,
                               const FetchOptions& options) {
    LivenessVerdict verdict;
    verdict.label = LivenessLabel::Indeterminate;

    const MediaPlaylistFetch first = fetch_media_playlist(playlist_url, fetcher, options);
    PlaylistEvidence evidence;
    evidence.media_playlist = first.url;
    if (!first.ok()) {
        verdict.note = first.error;
        verdict.playlist = evidence;
        return verdict;
    }
    evidence.first_sequence = first.playlist->media_sequence;
    verdict.samples = 1;

    std::this_thread::sleep_for(interval);
    const MediaPlaylistFetch second = fetch_media_playlist(first.url, fetcher, options);
    if (!second.ok()) {
        verdict.note = second.error;
        verdict.playlist = evidence;
        return verdict;
    }
    evidence.second_sequence = second.playlist->media_sequence;
    verdict.samples = 2;

    const auto& a = first.playlist->segments;
    const auto& b = second.playlist->segments;
    evidence.segments_changed =
        a.size() != b.size() || !std::equal(a.begin(), a.end(), b.begin(), [](const auto& x, const auto& y) {
            return x.uri == y.uri;
        });
    const bool advanced = *evidence.second_sequence > *evidence.first_sequence;

    PairEvidence pair;
    pair.checksum_equal = !advanced && !evidence.segments_changed &&
                          *evidence.second_sequence == *evidence.first_sequence;
    pair.changed = advanced || evidence.segments_changed;
    verdict.evidence.push_back(pair);
    verdict.playlist = evidence;
    if (pair.changed) {
        verdict.label = LivenessLabel::Live;
    } else if (pair.checksum_equal) {
        verdict.label = LivenessLabel::Static;
    } else {
        pair.determined = false;
        verdict.evidence.back() = pair;
        verdict.note = "media sequence went backwards";
    }
    return verdict;
}

}  // namespace camscout
