#pragma once

#include <optional>
#include <string_view>

namespace camscout {

enum class MediaKind { StillImage, MjpegStream, HlsStream, RtspLink, RtmpLink };

std::string_view to_string(MediaKind kind);
std::optional<MediaKind> parse_media_kind(std::string_view name);

/// Kinds the archiver knows how to snapshot.
constexpr bool is_capturable(MediaKind kind) {
    return kind == MediaKind::StillImage || kind == MediaKind::MjpegStream ||
           kind == MediaKind::HlsStream;
}

/// Scheme a record of this kind must carry ("rtsp", "rtmp"), or nullopt for http(s) kinds.
constexpr std::optional<std::string_view> required_scheme(MediaKind kind) {
    if (kind == MediaKind::RtspLink) return "rtsp";
    if (kind == MediaKind::RtmpLink) return "rtmp";
    return std::nullopt;
}

}  // namespace camscout
