#include "camscout/http.hpp"

#include "camscout/url.hpp"

#include <httplib.h>

namespace camscout {

std::string_view to_string(FetchError e) {
    switch (e) {
        case FetchError::None: return "none";
        case FetchError::InvalidUrl: return "invalid_url";
        case FetchError::Connect: return "connect";
        case FetchError::Timeout: return "timeout";
        case FetchError::HttpStatus: return "http_status";
        case FetchError::Oversized: return "oversized";
        case FetchError::Protocol: return "protocol";
        case FetchError::Canceled: return "canceled";
    }
    return "unknown";
}

namespace {

struct Target {
    std::string origin;
    std::string path;
};

bool parse_target(const std::string& url, Target& out, FetchResult& result) {
    try {
        const Url u = parse_absolute_url(url);
        if (u.scheme != "http" && u.scheme != "https") {
            result.error = FetchError::InvalidUrl;
            result.message = "unsupported scheme " + u.scheme;
            return false;
        }
        out.origin = u.scheme + "://" + u.host;
        if (u.port) out.origin += ":" + std::to_string(*u.port);
        out.path = u.path_and_query();
        return true;
    } catch (const UrlError& e) {
        result.error = FetchError::InvalidUrl;
        result.message = e.what();
        return false;
    }
}

}  // namespace

FetchResult HttpFetcher::stream(const std::string& url, const FetchOptions& options,
                                const StreamHandler& handler) {
    FetchResult result;
    result.started = utc_now();
    Target target;
    if (!parse_target(url, target, result)) {
        result.finished = utc_now();
        return result;
    }

    httplib::Client client(target.origin);
    const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(options.timeout);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    client.set_follow_location(true);
    client.set_keep_alive(false);

    const auto deadline = std::chrono::steady_clock::now() + options.timeout;
    bool deadline_hit = false;
    bool status_rejected = false;

    httplib::Headers headers{{"User-Agent", options.user_agent}};
    auto response_handler = [&](const httplib::Response& res) {
        result.status = res.status;
        result.content_type = res.get_header_value("Content-Type");
        if (res.status < 200 || res.status >= 300) {
            status_rejected = true;
            return false;
        }
        return handler.on_response ? handler.on_response(res.status, result.content_type) : true;
    };
    auto content_receiver = [&](const char* data, std::size_t len) {
        if (std::chrono::steady_clock::now() > deadline) {
            deadline_hit = true;
            return false;
        }
        return handler.on_data ? handler.on_data(std::string_view(data, len)) : true;
    };

    auto res = client.Get(target.path, headers, response_handler, content_receiver);
    result.finished = utc_now();

    if (status_rejected) {
        result.error = FetchError::HttpStatus;
        result.message = "HTTP " + std::to_string(result.status);
        return result;
    }
    if (deadline_hit) {
        result.error = FetchError::Timeout;
        result.message = "deadline exceeded";
        return result;
    }
    if (!res) {
        const auto err = res.error();
        result.message = httplib::to_string(err);
        switch (err) {
            case httplib::Error::Connection:
            case httplib::Error::ProxyConnection:
            case httplib::Error::SSLConnection:
            case httplib::Error::SSLServerVerification:
                result.error = FetchError::Connect;
                break;
            case httplib::Error::ConnectionTimeout:
                result.error = FetchError::Timeout;
                break;
            case httplib::Error::Canceled:
                result.error = FetchError::Canceled;
                break;
            case httplib::Error::Read:
            case httplib::Error::Write:
                result.error = (result.finished - result.started) >= options.timeout
                                   ? FetchError::Timeout
                                   : FetchError::Protocol;
                break;
            default:
                result.error = FetchError::Protocol;
                break;
        }
        return result;
    }
    result.status = res->status;
    if (result.content_type.empty()) result.content_type = res->get_header_value("Content-Type");
    return result;
}

FetchResult HttpFetcher::get(const std::string& url, const FetchOptions& options) {
    std::string body;
    bool oversized = false;
    StreamHandler handler;
    handler.on_data = [&](std::string_view chunk) {
        if (body.size() + chunk.size() > options.max_body) {
            oversized = true;
            return false;
        }
        body.append(chunk);
        return true;
    };
    FetchResult result = stream(url, options, handler);
    if (oversized) {
        result.error = FetchError::Oversized;
        result.message = "body exceeds " + std::to_string(options.max_body) + " bytes";
        return result;
    }
    if (result.ok()) result.body = std::move(body);
    return result;
}

}  // namespace camscout
