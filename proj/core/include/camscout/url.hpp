#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace camscout {

class UrlError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// RFC 3986 components. `has_authority` distinguishes "http://h/p" from "mailto:x".
struct Url {
    std::string scheme;
    bool has_authority = false;
    std::string userinfo;
    std::string host;
    std::optional<int> port;
    std::string path;
    std::optional<std::string> query;
    std::optional<std::string> fragment;

    std::string to_string() const;
    /// "host" or "host:port" as it would appear in the authority.
    std::string authority() const;
    /// path plus "?query", never empty for hierarchical URLs.
    std::string path_and_query() const;
    int effective_port() const;

    bool operator==(const Url&) const = default;
};

/// Parses an absolute URL or a relative reference without resolving it.
/// Throws UrlError on syntax the parser cannot make sense of.
Url parse_url_reference(std::string_view text);

/// Resolves `raw` against `base`, lowercases scheme and host, strips the
/// fragment and default port, and collapses dot-segments. Idempotent.
/// Throws UrlError on malformed input.
std::string normalize_url(std::string_view raw, std::string_view base);

/// normalize_url for a reference that must already be absolute.
std::string normalize_url(std::string_view absolute);

/// Parses an already-normalized absolute URL.
Url parse_absolute_url(std::string_view absolute);

std::string remove_dot_segments(std::string_view path);

std::optional<int> default_port(std::string_view scheme);

}  // namespace camscout
