#include "camscout/crawler.hpp"
#include "camscout/url.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace camscout {

namespace {

struct Attribute {
    std::string name;
    std::string value;
};

struct Tag {
    std::string name;
    std::vector<Attribute> attributes;
};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool ends_with_ci(std::string_view s, std::string_view suffix) {
    if (s.size() < suffix.size()) return false;
    return lower(s.substr(s.size() - suffix.size())) == suffix;
}

std::string decode_entities(std::string_view in) {
    static constexpr std::pair<std::string_view, char> named[] = {
        {"&amp;", '&'}, {"&quot;", '"'}, {"&apos;", '\''}, {"&lt;", '<'}, {"&gt;", '>'},
        {"&#39;", '\''}, {"&#x27;", '\''}, {"&#47;", '/'}, {"&#x2F;", '/'}};
    std::string out;
    out.reserve(in.size());
    for (std::size_t i = 0; i < in.size();) {
        bool replaced = false;
        if (in[i] == '&') {
            for (const auto& [entity, ch] : named) {
                if (in.substr(i, entity.size()) == entity) {
                    out.push_back(ch);
                    i += entity.size();
                    replaced = true;
                    break;
                }
            }
        }
        if (!replaced) out.push_back(in[i++]);
    }
    return out;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Tolerant tag tokenizer: anything that does not look like a tag is skipped.
std::vector<Tag> scan_tags(std::string_view html) {
    std::vector<Tag> tags;
    std::size_t i = 0;
    const std::size_t n = html.size();
    const std::string low = lower(html);
    while (i < n) {
        const auto lt = html.find('<', i);
        if (lt == std::string_view::npos) break;
        i = lt + 1;
        if (html.substr(lt, 4) == "<!--") {
            const auto end = html.find("-->", lt + 4);
            i = end == std::string_view::npos ? n : end + 3;
            continue;
        }
        if (i >= n || !std::isalpha(static_cast<unsigned char>(html[i]))) continue;

        Tag tag;
        while (i < n && (std::isalnum(static_cast<unsigned char>(html[i])) || html[i] == '-'))
            tag.name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(html[i++]))));

        while (i < n && html[i] != '>') {
            while (i < n && (is_space(html[i]) || html[i] == '/')) ++i;
            if (i >= n || html[i] == '>') break;
            if (html[i] == '<') break;  // unterminated tag; resync on the next '<'
            Attribute attr;
            while (i < n && !is_space(html[i]) && html[i] != '=' && html[i] != '>' && html[i] != '<')
                attr.name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(html[i++]))));
            while (i < n && is_space(html[i])) ++i;
            if (i < n && html[i] == '=') {
                ++i;
                while (i < n && is_space(html[i])) ++i;
                if (i < n && (html[i] == '"' || html[i] == '\'')) {
                    const char quote = html[i++];
                    const auto close = html.find(quote, i);
                    const auto stop = close == std::string_view::npos ? n : close;
                    attr.value = decode_entities(html.substr(i, stop - i));
                    i = stop == n ? n : stop + 1;
                } else {
                    const auto start = i;
                    while (i < n && !is_space(html[i]) && html[i] != '>') ++i;
                    attr.value = decode_entities(html.substr(start, i - start));
                }
            }
            if (!attr.name.empty()) tag.attributes.push_back(std::move(attr));
        }
        const std::string name = tag.name;
        if (!name.empty()) tags.push_back(std::move(tag));
        // Script and style bodies are opaque to the tag scanner; raw-text
        // scanning still sees them.
        if (name == "script" || name == "style") {
            const auto close = low.find("</" + name, i);
            i = close == std::string::npos ? n : close;
        }
    }
    return tags;
}

bool is_url_terminator(char c) {
    return is_space(c) || c == '"' || c == '\'' || c == '<' || c == '>' || c == '`' || c == '\\' ||
           c == ')' || c == '(' || c == '[' || c == ']' || c == '{' || c == '}' || c == ',' ||
           c == ';';
}

// Absolute URLs with the given scheme prefixes found anywhere in the text.
std::vector<std::string> scan_raw_urls(std::string_view text) {
    static constexpr std::string_view prefixes[] = {"rtsp://", "rtmp://", "http://", "https://"};
    const std::string low = lower(text);
    std::vector<std::string> out;
    for (auto prefix : prefixes) {
        std::size_t pos = 0;
        while ((pos = low.find(prefix, pos)) != std::string::npos) {
            std::size_t end = pos + prefix.size();
            while (end < text.size() && !is_url_terminator(text[end])) ++end;
            std::string_view url = text.substr(pos, end - pos);
            while (!url.empty() && (url.back() == '.' || url.back() == ':' || url.back() == '!'))
                url.remove_suffix(1);
            if (url.size() > prefix.size()) out.emplace_back(url);
            pos = end;
        }
    }
    return out;
}

}  // namespace

std::optional<MediaKind> classify_link(std::string_view normalized_url, LinkContext context) {
    Url url;
    try {
        url = parse_url_reference(normalized_url);
    } catch (const UrlError&) {
        return std::nullopt;
    }
    const std::string scheme = lower(url.scheme);
    if (scheme == "rtsp") return MediaKind::RtspLink;
    if (scheme == "rtmp") return MediaKind::RtmpLink;
    if (scheme != "http" && scheme != "https") return std::nullopt;

    const std::string_view path = url.path;
    if (ends_with_ci(path, ".m3u8")) return MediaKind::HlsStream;
    if (ends_with_ci(path, ".mjpg") || ends_with_ci(path, ".mjpeg")) return MediaKind::MjpegStream;
    std::size_t start = 0;
    while (start < path.size()) {
        auto slash = path.find('/', start);
        auto segment = path.substr(start, slash == std::string_view::npos ? path.npos : slash - start);
        if (lower(segment) == "mjpg") return MediaKind::MjpegStream;
        if (slash == std::string_view::npos) break;
        start = slash + 1;
    }
    if (context == LinkContext::ImageSource || context == LinkContext::AnchorTarget) {
        if (ends_with_ci(path, ".jpg") || ends_with_ci(path, ".jpeg") || ends_with_ci(path, ".png"))
            return MediaKind::StillImage;
    }
    return std::nullopt;
}

std::vector<CandidateLink> extract_candidate_links(std::string_view html, std::string_view base) {
    std::vector<CandidateLink> out;
    std::set<std::string> seen;
    const std::string source(base);

    auto consider = [&](std::string_view raw, LinkContext context) {
        if (raw.empty()) return;
        std::string url;
        try {
            url = normalize_url(raw, base);
        } catch (const UrlError&) {
            return;
        }
        auto kind = classify_link(url, context);
        if (!kind || seen.contains(url)) return;
        seen.insert(url);
        out.push_back(CandidateLink{url, *kind, source, 0});
    };

    for (const auto& tag : scan_tags(html)) {
        for (const auto& attr : tag.attributes) {
            LinkContext context = LinkContext::OtherAttribute;
            if (tag.name == "img" && (attr.name == "src" || attr.name == "data-src"))
                context = LinkContext::ImageSource;
            else if (tag.name == "a" && attr.name == "href")
                context = LinkContext::AnchorTarget;
            else if (attr.name != "src" && attr.name != "href" && attr.name != "data" &&
                     attr.name != "data-src" && attr.name != "value" && attr.name != "poster")
                continue;
            consider(attr.value, context);
        }
    }
    for (const auto& raw : scan_raw_urls(html)) consider(raw, LinkContext::RawText);
    return out;
}

std::vector<std::string> extract_page_links(std::string_view html, std::string_view base,
                                            const std::optional<std::string>& restrict_host) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    const std::optional<std::string> host = restrict_host ? std::optional(lower(*restrict_host))
                                                          : std::nullopt;
    for (const auto& tag : scan_tags(html)) {
        if (tag.name != "a" && tag.name != "area") continue;
        for (const auto& attr : tag.attributes) {
            if (attr.name != "href" || attr.value.empty()) continue;
            Url url;
            std::string normalized;
            try {
                normalized = normalize_url(attr.value, base);
                url = parse_url_reference(normalized);
            } catch (const UrlError&) {
                continue;
            }
            if (url.scheme != "http" && url.scheme != "https") continue;
            if (host && url.host != *host) continue;
            if (seen.insert(normalized).second) out.push_back(std::move(normalized));
        }
    }
    return out;
}

}  // namespace camscout
