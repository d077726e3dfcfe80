#pragma once

#include "camscout/http.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace camscout {

/// `boundary` parameter of a multipart Content-Type, unquoted.
std::optional<std::string> multipart_boundary(std::string_view content_type);

struct MultipartPart {
    std::string content_type;
    std::string body;
};

/// Incremental multipart/x-mixed-replace parser. Feed bytes as they arrive
/// and drain completed parts. Parts with a Content-Length header are cut by
/// length; others end at the next delimiter line.
class MultipartReader {
public:
    explicit MultipartReader(std::string boundary, std::size_t max_buffer = 16u << 20);

    void feed(std::string_view bytes);
    std::optional<MultipartPart> next_part();

    bool saw_delimiter() const { return saw_delimiter_; }
    bool finished() const { return state_ == State::Done; }
    /// True once the buffer grew past the limit without yielding a part.
    bool overflowed() const { return overflowed_; }

private:
    enum class State { Preamble, Headers, Body, Done };

    std::string delimiter_;
    std::size_t max_buffer_;
    std::string buffer_;
    State state_ = State::Preamble;
    MultipartPart current_;
    std::optional<std::size_t> content_length_;
    bool saw_delimiter_ = false;
    bool overflowed_ = false;
};

/// Strips trailing CR/LF padding and checks SOI/EOI framing.
std::optional<std::string> as_jpeg_frame(const MultipartPart& part);

enum class FrameError { None, Fetch, NotMultipart, BoundaryNotFound, FrameTimeout, FrameParse };

std::string_view to_string(FrameError e);

struct FrameResult {
    std::optional<std::string> frame;
    FrameError error = FrameError::None;
    FetchError fetch_error = FetchError::None;
    std::string message;

    bool ok() const { return frame.has_value(); }
    /// Manifest error_kind: the fetch error name for transport failures,
    /// otherwise the frame error name.
    std::string error_kind() const;
};

/// Connects to an MJPEG stream, returns the first complete JPEG part and
/// closes the connection.
FrameResult sample_mjpeg_frame(const std::string& url, Fetcher& fetcher, const FetchOptions& options);

/// Same extraction over an already-buffered response body.
FrameResult first_jpeg_frame(std::string_view content_type, std::string_view body);

}  // namespace camscout
