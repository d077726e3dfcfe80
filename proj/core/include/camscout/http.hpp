#pragma once

#include "camscout/time.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace camscout {

inline constexpr std::size_t kDefaultMaxBody = 8u << 20;  // 8 MiB

struct FetchOptions {
    Millis timeout{10'000};
    std::size_t max_body = kDefaultMaxBody;
    std::string user_agent = "camscout/0.1";
};

enum class FetchError {
    None,
    InvalidUrl,
    Connect,
    Timeout,
    HttpStatus,
    Oversized,
    Protocol,
    Canceled,
};

/// Stable lowercase name used in manifests and crawl reports ("connect", "timeout", ...).
std::string_view to_string(FetchError e);

struct FetchResult {
    FetchError error = FetchError::None;
    int status = 0;
    std::string content_type;
    /// Raw body bytes.
    std::string body;
    std::string message;
    Timestamp started{};
    Timestamp finished{};

    bool ok() const { return error == FetchError::None; }
};

/// Callbacks for incremental reads. Returning false from either stops the
/// transfer; the resulting FetchResult then reports FetchError::Canceled
/// unless the timeout elapsed first.
struct StreamHandler {
    std::function<bool(int status, std::string_view content_type)> on_response;
    std::function<bool(std::string_view chunk)> on_data;
};

/// Transport used by the crawler, the samplers and the archiver. Implementations
/// must be safe to call from many threads at once.
class Fetcher {
public:
    virtual ~Fetcher() = default;

    /// GET with the body buffered (up to options.max_body). Non-2xx statuses
    /// are reported as FetchError::HttpStatus with the status preserved.
    virtual FetchResult get(const std::string& url, const FetchOptions& options) = 0;

    /// GET delivering the body incrementally. The returned result carries no body.
    virtual FetchResult stream(const std::string& url, const FetchOptions& options,
                               const StreamHandler& handler) = 0;
};

/// cpp-httplib backed fetcher for http:// and https:// URLs.
class HttpFetcher final : public Fetcher {
public:
    FetchResult get(const std::string& url, const FetchOptions& options) override;
    FetchResult stream(const std::string& url, const FetchOptions& options,
                       const StreamHandler& handler) override;
};

}  // namespace camscout
