#include "camscout/media.hpp"

#include <array>
#include <utility>

namespace camscout {

namespace {
constexpr std::array<std::pair<MediaKind, std::string_view>, 5> kNames{{
    {MediaKind::StillImage, "StillImage"},
    {MediaKind::MjpegStream, "MjpegStream"},
    {MediaKind::HlsStream, "HlsStream"},
    {MediaKind::RtspLink, "RtspLink"},
    {MediaKind::RtmpLink, "RtmpLink"},
}};
}  // namespace

std::string_view to_string(MediaKind kind) {
    for (const auto& [k, name] : kNames)
        if (k == kind) return name;
    return "Unknown";
}

std::optional<MediaKind> parse_media_kind(std::string_view name) {
    for (const auto& [k, n] : kNames)
        if (n == name) return k;
    return std::nullopt;
}

}  // namespace camscout
