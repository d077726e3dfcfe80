#include "camscout/mjpeg.hpp"

#include "camscout/raster.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace camscout {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::optional<std::string> multipart_boundary(std::string_view content_type) {
    const std::string low = lower(content_type);
    if (low.find("multipart/") == std::string::npos) return std::nullopt;
    auto pos = low.find("boundary=");
    if (pos == std::string::npos) return std::nullopt;
    std::string_view value = content_type.substr(pos + 9);
    if (!value.empty() && value.front() == '"') {
        value.remove_prefix(1);
        value = value.substr(0, value.find('"'));
    } else {
        value = value.substr(0, value.find(';'));
    }
    value = trim(value);
    if (value.empty()) return std::nullopt;
    return std::string(value);
}

MultipartReader::MultipartReader(std::string boundary, std::size_t max_buffer)
    : max_buffer_(max_buffer) {
    // Some cameras declare the boundary with its leading dashes already on.
    delimiter_ = boundary.starts_with("--") ? boundary : "--" + boundary;
}

void MultipartReader::feed(std::string_view bytes) {
    if (state_ == State::Done) return;
    buffer_.append(bytes);
    if (buffer_.size() > max_buffer_) overflowed_ = true;
}

std::optional<MultipartPart> MultipartReader::next_part() {
    for (;;) {
        switch (state_) {
            case State::Done:
                return std::nullopt;

            case State::Preamble: {
                const auto pos = buffer_.find(delimiter_);
                if (pos == std::string::npos) {
                    // Keep a tail long enough to hold a split delimiter.
                    if (buffer_.size() > delimiter_.size())
                        buffer_.erase(0, buffer_.size() - delimiter_.size());
                    return std::nullopt;
                }
                const auto after = pos + delimiter_.size();
                if (buffer_.size() < after + 2) return std::nullopt;
                saw_delimiter_ = true;
                if (buffer_.compare(after, 2, "--") == 0) {
                    state_ = State::Done;
                    buffer_.clear();
                    return std::nullopt;
                }
                const auto eol = buffer_.find('\n', after);
                if (eol == std::string::npos) return std::nullopt;
                buffer_.erase(0, eol + 1);
                current_ = {};
                content_length_.reset();
                state_ = State::Headers;
                break;
            }

            case State::Headers: {
                std::size_t end = std::string::npos, skip = 0;
                if (buffer_.starts_with("\r\n")) {
                    end = 0;
                    skip = 2;
                } else if (buffer_.starts_with("\n")) {
                    end = 0;
                    skip = 1;
                } else if (auto p = buffer_.find("\r\n\r\n"); p != std::string::npos) {
                    end = p;
                    skip = 4;
                }
                if (auto p = buffer_.find("\n\n"); p != std::string::npos && (end == std::string::npos || p < end)) {
                    end = p;
                    skip = 2;
                }
                if (end == std::string::npos) return std::nullopt;

                std::string_view headers(buffer_.data(), end);
                std::size_t start = 0;
                while (start < headers.size()) {
                    auto nl = headers.find('\n', start);
                    auto line = trim(headers.substr(start, nl == std::string_view::npos ? headers.npos : nl - start));
                    start = nl == std::string_view::npos ? headers.size() : nl + 1;
                    auto colon = line.find(':');
                    if (colon == std::string_view::npos) continue;
                    const auto name = lower(trim(line.substr(0, colon)));
                    const auto value = trim(line.substr(colon + 1));
                    if (name == "content-type") {
                        current_.content_type = std::string(value);
                    } else if (name == "content-length") {
                        std::size_t n = 0;
                        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
                        if (ec == std::errc{} && ptr == value.data() + value.size()) content_length_ = n;
                    }
                }
                buffer_.erase(0, end + skip);
                state_ = State::Body;
                break;
            }

            case State::Body: {
                if (content_length_) {
                    if (buffer_.size() < *content_length_) return std::nullopt;
                    current_.body = buffer_.substr(0, *content_length_);
                    buffer_.erase(0, *content_length_);
                } else {
                    const auto pos = buffer_.find(delimiter_);
                    if (pos == std::string::npos) return std::nullopt;
                    std::size_t cut = pos;
                    if (cut > 0 && buffer_[cut - 1] == '\n') --cut;
                    if (cut > 0 && buffer_[cut - 1] == '\r') --cut;
                    current_.body = buffer_.substr(0, cut);
                    buffer_.erase(0, pos);
                }
                state_ = State::Preamble;
                return std::move(current_);
            }
        }
    }
}

std::optional<std::string> as_jpeg_frame(const MultipartPart& part) {
    const std::string type = lower(part.content_type);
    if (!type.empty() && type.find("jpeg") == std::string::npos && type.find("jpg") == std::string::npos)
        return std::nullopt;
    std::string_view body = part.body;
    while (!body.empty() && (body.back() == '\r' || body.back() == '\n')) body.remove_suffix(1);
    if (!has_jpeg_framing(body)) return std::nullopt;
    return std::string(body);
}

std::string_view to_string(FrameError e) {
    switch (e) {
        case FrameError::None: return "none";
        case FrameError::Fetch: return "fetch";
        case FrameError::NotMultipart: return "non_multipart";
        case FrameError::BoundaryNotFound: return "boundary_not_found";
        case FrameError::FrameTimeout: return "frame_timeout";
        case FrameError::FrameParse: return "frame_parse";
    }
    return "unknown";
}

std::string FrameResult::error_kind() const {
    if (error == FrameError::Fetch) return std::string(to_string(fetch_error));
    return std::string(to_string(error));
}

namespace {

// Shared state machine for streamed and buffered input.
class FrameExtractor {
public:
    bool start(std::string_view content_type) {
        if (lower(content_type).find("multipart/") == std::string::npos) {
            result_.error = FrameError::NotMultipart;
            result_.message = "content type '" + std::string(content_type) + "' is not multipart";
            return false;
        }
        auto boundary = multipart_boundary(content_type);
        if (!boundary) {
            result_.error = FrameError::BoundaryNotFound;
            result_.message = "no boundary parameter";
            return false;
        }
        reader_.emplace(*boundary);
        return true;
    }

    // Returns false once a frame is found or parsing cannot continue.
    bool feed(std::string_view chunk) {
        reader_->feed(chunk);
        while (auto part = reader_->next_part()) {
            if (auto frame = as_jpeg_frame(*part)) {
                result_.frame = std::move(frame);
                result_.error = FrameError::None;
                return false;
            }
        }
        if (reader_->overflowed()) {
            result_.error = reader_->saw_delimiter() ? FrameError::FrameParse : FrameError::BoundaryNotFound;
            result_.message = "no complete frame within buffer limit";
            return false;
        }
        return !reader_->finished();
    }

    FrameResult finish(const FetchResult* fetch) {
        if (result_.frame || result_.error != FrameError::None) return std::move(result_);
        if (fetch && fetch->error == FetchError::Timeout) {
            result_.error = FrameError::FrameTimeout;
            result_.message = "no complete frame before the deadline";
        } else if (fetch && !fetch->ok() && fetch->error != FetchError::Canceled) {
            result_.error = FrameError::Fetch;
            result_.fetch_error = fetch->error;
            result_.message = fetch->message;
        } else if (reader_ && !reader_->saw_delimiter()) {
            result_.error = FrameError::BoundaryNotFound;
            result_.message = "boundary delimiter never appeared";
        } else {
            result_.error = FrameError::FrameParse;
            result_.message = "stream ended without a valid JPEG part";
        }
        return std::move(result_);
    }

private:
    std::optional<MultipartReader> reader_;
    FrameResult result_;
};

}  // namespace

FrameResult sample_mjpeg_frame(const std::string& url, Fetcher& fetcher, const FetchOptions& options) {
    FrameExtractor extractor;
    StreamHandler handler;
    handler.on_response = [&](int, std::string_view content_type) { return extractor.start(content_type); };
    handler.on_data = [&](std::string_view chunk) { return extractor.feed(chunk); };
    const FetchResult fetch = fetcher.stream(url, options, handler);
    return extractor.finish(&fetch);
}

FrameResult first_jpeg_frame(std::string_view content_type, std::string_view body) {
    FrameExtractor extractor;
    if (extractor.start(content_type)) extractor.feed(body);
    return extractor.finish(nullptr);
}

}  // namespace camscout
