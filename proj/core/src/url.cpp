#include "camscout/url.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace camscout {

namespace {

bool is_scheme_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// Strips surrounding C0/space, drops embedded tab/CR/LF and percent-encodes
// bytes that may not appear literally in a URI.
std::string clean_input(std::string_view in) {
    std::size_t b = 0, e = in.size();
    while (b < e && static_cast<unsigned char>(in[b]) <= 0x20) ++b;
    while (e > b && static_cast<unsigned char>(in[e - 1]) <= 0x20) --e;
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(e - b);
    for (std::size_t i = b; i < e; ++i) {
        const auto c = static_cast<unsigned char>(in[i]);
        if (c == '\t' || c == '\n' || c == '\r') continue;
        if (c <= 0x20 || c >= 0x7f || c == '"' || c == '<' || c == '>' || c == '`' || c == '{' ||
            c == '}' || c == '|' || c == '^') {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xf]);
        } else {
            out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

void parse_authority(std::string_view auth, Url& url) {
    url.has_authority = true;
    if (auto at = auth.rfind('@'); at != std::string_view::npos) {
        url.userinfo = std::string(auth.substr(0, at));
        auth.remove_prefix(at + 1);
    }
    std::string_view host = auth, port;
    if (!auth.empty() && auth.front() == '[') {
        auto close = auth.find(']');
        if (close == std::string_view::npos) throw UrlError("unterminated IPv6 literal");
        host = auth.substr(0, close + 1);
        auto rest = auth.substr(close + 1);
        if (!rest.empty()) {
            if (rest.front() != ':') throw UrlError("junk after IPv6 literal");
            port = rest.substr(1);
        }
    } else if (auto colon = auth.rfind(':'); colon != std::string_view::npos) {
        host = auth.substr(0, colon);
        port = auth.substr(colon + 1);
    }
    for (char c : host) {
        if (c == '/' || c == '\\' || c == '?' || c == '#' || c == '@')
            throw UrlError("invalid character in host");
    }
    url.host = std::string(host);
    if (!port.empty()) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
        if (ec != std::errc{} || ptr != port.data() + port.size() || value < 0 || value > 65535)
            throw UrlError("invalid port '" + std::string(port) + "'");
        url.port = value;
    }
}

}  // namespace

std::optional<int> default_port(std::string_view scheme) {
    if (scheme == "http") return 80;
    if (scheme == "https") return 443;
    if (scheme == "rtsp") return 554;
    if (scheme == "rtmp") return 1935;
    return std::nullopt;
}

std::string Url::authority() const {
    std::string out;
    if (!userinfo.empty()) out += userinfo + "@";
    out += host;
    if (port) out += ":" + std::to_string(*port);
    return out;
}

std::string Url::path_and_query() const {
    std::string out = path.empty() ? "/" : path;
    if (query) out += "?" + *query;
    return out;
}

int Url::effective_port() const {
    if (port) return *port;
    return default_port(scheme).value_or(0);
}

std::string Url::to_string() const {
    std::string out;
    if (!scheme.empty()) out += scheme + ":";
    if (has_authority) out += "//" + authority();
    out += path;
    if (query) out += "?" + *query;
    if (fragment) out += "#" + *fragment;
    return out;
}

Url parse_url_reference(std::string_view text) {
    const std::string cleaned = clean_input(text);
    std::string_view s = cleaned;
    Url url;

    if (!s.empty() && std::isalpha(static_cast<unsigned char>(s.front()))) {
        std::size_t i = 1;
        while (i < s.size() && is_scheme_char(s[i])) ++i;
        if (i < s.size() && s[i] == ':') {
            url.scheme = std::string(s.substr(0, i));
            s.remove_prefix(i + 1);
        }
    }

    if (auto hash = s.find('#'); hash != std::string_view::npos) {
        url.fragment = std::string(s.substr(hash + 1));
        s = s.substr(0, hash);
    }
    if (auto q = s.find('?'); q != std::string_view::npos) {
        url.query = std::string(s.substr(q + 1));
        s = s.substr(0, q);
    }
    if (s.starts_with("//")) {
        s.remove_prefix(2);
        auto slash = s.find('/');
        parse_authority(s.substr(0, slash), url);
        s = slash == std::string_view::npos ? std::string_view{} : s.substr(slash);
    }
    url.path = std::string(s);
    return url;
}

std::string remove_dot_segments(std::string_view in) {
    std::string input(in), output;
    while (!input.empty()) {
        if (input.starts_with("../")) {
            input.erase(0, 3);
        } else if (input.starts_with("./")) {
            input.erase(0, 2);
        } else if (input.starts_with("/./")) {
            input.erase(0, 2);
        } else if (input == "/.") {
            input = "/";
        } else if (input.starts_with("/../") || input == "/..") {
            input = input.size() == 3 ? "/" : input.substr(3);
            auto last = output.rfind('/');
            output.erase(last == std::string::npos ? 0 : last);
        } else if (input == "." || input == "..") {
            input.clear();
        } else {
            std::size_t start = input.front() == '/' ? 1 : 0;
            auto next = input.find('/', start);
            output += input.substr(0, next);
            input.erase(0, next == std::string::npos ? input.size() : next);
        }
    }
    return output;
}

namespace {

Url resolve(const Url& base, const Url& ref) {
    Url t;
    if (!ref.scheme.empty()) {
        t = ref;
        t.path = remove_dot_segments(ref.path);
        return t;
    }
    t.scheme = base.scheme;
    if (ref.has_authority) {
        t.has_authority = true;
        t.userinfo = ref.userinfo;
        t.host = ref.host;
        t.port = ref.port;
        t.path = remove_dot_segments(ref.path);
        t.query = ref.query;
    } else {
        t.has_authority = base.has_authority;
        t.userinfo = base.userinfo;
        t.host = base.host;
        t.port = base.port;
        if (ref.path.empty()) {
            t.path = base.path;
            t.query = ref.query ? ref.query : base.query;
        } else {
            if (ref.path.front() == '/') {
                t.path = remove_dot_segments(ref.path);
            } else {
                std::string merged;
                if (base.has_authority && base.path.empty()) {
                    merged = "/" + ref.path;
                } else {
                    auto slash = base.path.rfind('/');
                    merged = (slash == std::string::npos ? std::string{}
                                                         : base.path.substr(0, slash + 1)) +
                             ref.path;
                }
                t.path = remove_dot_segments(merged);
            }
            t.query = ref.query;
        }
    }
    t.fragment = ref.fragment;
    return t;
}

std::string finish(Url url) {
    if (url.scheme.empty()) throw UrlError("URL is not absolute");
    url.scheme = to_lower(url.scheme);
    url.host = to_lower(url.host);
    url.fragment.reset();
    const bool web = url.scheme == "http" || url.scheme == "https";
    const bool stream = url.scheme == "rtsp" || url.scheme == "rtmp";
    if ((web || stream) && (!url.has_authority || url.host.empty()))
        throw UrlError("missing host in " + url.scheme + " URL");
    if (url.port && url.port == default_port(url.scheme)) url.port.reset();
    if (url.has_authority && url.path.empty()) url.path = "/";
    return url.to_string();
}

}  // namespace

std::string normalize_url(std::string_view raw, std::string_view base) {
    const Url ref = parse_url_reference(raw);
    if (ref.scheme.empty() && ref.path.empty() && !ref.has_authority && !ref.query &&
        !ref.fragment)
        throw UrlError("empty URL");
    if (!ref.scheme.empty()) return finish(resolve(Url{}, ref));
    if (base.empty()) throw UrlError("relative URL without a base");
    const Url b = parse_url_reference(base);
    if (b.scheme.empty()) throw UrlError("base URL is not absolute");
    return finish(resolve(b, ref));
}

std::string normalize_url(std::string_view absolute) { return normalize_url(absolute, {}); }

Url parse_absolute_url(std::string_view absolute) {
    Url url = parse_url_reference(normalize_url(absolute));
    return url;
}

}  // namespace camscout
