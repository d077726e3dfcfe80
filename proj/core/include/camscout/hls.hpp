#pragma once

#include "camscout/http.hpp"
#include "camscout/verdict.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace camscout {

class PlaylistParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct HlsVariant {
    std::string uri;
    std::optional<std::int64_t> bandwidth;
};

struct HlsSegment {
    std::string uri;
    double duration = 0.0;
};

/// Either a master playlist (variants non-empty) or a media playlist.
struct HlsPlaylist {
    bool is_master = false;
    std::vector<HlsVariant> variants;
    std::int64_t media_sequence = 0;
    std::optional<double> target_duration;
    std::vector<HlsSegment> segments;
    bool end_list = false;
};

/// Throws PlaylistParseError when the text is not an M3U8 playlist.
HlsPlaylist parse_playlist(std::string_view text);

struct MediaPlaylistFetch {
    std::optional<HlsPlaylist> playlist;
    /// Absolute URL of the media playlist actually parsed.
    std::string url;
    FetchError fetch_error = FetchError::None;
    std::string error;

    bool ok() const { return playlist.has_value(); }
};

/// Fetches `url`; for a master playlist, follows the first variant.
MediaPlaylistFetch fetch_media_playlist(const std::string& url, Fetcher& fetcher,
                                        const FetchOptions& options);

/// Live iff the media sequence advanced or the segment list changed between
/// two fetches `interval` apart; Static iff both are unchanged.
LivenessVerdict check_hls_live(const std::string& playlist_url, Millis interval, Fetcher& fetcher,
                               const FetchOptions& options);

/// Absolute URL of the last segment, or nullopt for an empty playlist.
std::optional<std::string> latest_segment_url(const HlsPlaylist& playlist, std::string_view playlist_url);

}  // namespace camscout
