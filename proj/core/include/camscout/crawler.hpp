#pragma once

#include "camscout/http.hpp"
#include "camscout/media.hpp"
#include "camscout/time.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace camscout {

struct CandidateLink {
    std::string url;
    MediaKind media_kind = MediaKind::StillImage;
    std::string source_page;
    int depth = 0;

    bool operator==(const CandidateLink&) const = default;
};

/// Where a URL was found; still images only count from <img> sources and
/// anchor targets.
enum class LinkContext { ImageSource, AnchorTarget, OtherAttribute, RawText };

/// Media kind implied by a normalized URL, or nullopt if it does not look
/// like camera data.
std::optional<MediaKind> classify_link(std::string_view normalized_url, LinkContext context);

/// Lenient scan of a document for camera-like links: <img>/<a> image
/// targets, MJPEG and HLS URLs in any attribute, and rtsp:// / rtmp:// (plus
/// absolute stream URLs) anywhere in the raw text. Deduplicated by
/// normalized URL, in document order; depth is left at 0.
std::vector<CandidateLink> extract_candidate_links(std::string_view html, std::string_view base);

/// Normalized http(s) anchor targets. When `restrict_host` is set, links to
/// other hosts are dropped. Deduplicated, in document order.
std::vector<std::string> extract_page_links(std::string_view html, std::string_view base,
                                            const std::optional<std::string>& restrict_host = {});

/// Produces the document text for a page URL. The default implementation
/// fetches it statically; a browser-backed renderer can be plugged in here.
class PageRenderer {
public:
    virtual ~PageRenderer() = default;
    virtual FetchResult render(const std::string& url, const FetchOptions& options) = 0;
};

class StaticPageRenderer final : public PageRenderer {
public:
    explicit StaticPageRenderer(Fetcher& fetcher) : fetcher_(fetcher) {}
    FetchResult render(const std::string& url, const FetchOptions& options) override {
        return fetcher_.get(url, options);
    }

private:
    Fetcher& fetcher_;
};

struct CrawlConfig {
    std::vector<std::string> seeds;
    int max_depth = 1;
    int max_pages = 100;
    bool same_host_only = false;
    Millis per_host_min_delay{250};
    Millis request_timeout{10'000};
    std::string user_agent = "camscout/0.1";
    /// Hosts fetched concurrently; never more than one request per host.
    int fanout = 4;
    std::size_t max_body = kDefaultMaxBody;
    bool respect_robots = true;

    /// Throws std::invalid_argument.
    void validate() const;
};

struct CrawlReportEntry {
    std::string url;
    int depth = 0;
    int status = 0;
    /// Empty on success; otherwise a FetchError name or "robots_disallowed".
    std::string error;
    std::size_t candidates_found = 0;
    Timestamp fetched_at{};
};

struct CrawlResult {
    std::vector<CandidateLink> candidates;
    std::vector<CrawlReportEntry> report;
    std::size_t pages_fetched = 0;
};

/// Breadth-first crawl from the seeds. Per-page failures land in the report;
/// only an invalid config throws.
CrawlResult crawl(const CrawlConfig& config, Fetcher& fetcher);
CrawlResult crawl(const CrawlConfig& config, Fetcher& fetcher, PageRenderer& renderer);

/// One line-delimited JSON object per report entry.
std::string encode_crawl_report_line(const CrawlReportEntry& entry);

}  // namespace camscout
