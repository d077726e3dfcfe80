#include "camscout/crawler.hpp"

#include "camscout/robots.hpp"
#include "camscout/url.hpp"
#include "json_codec.hpp"

#include <spdlog/spdlog.h>

#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace camscout {

void CrawlConfig::validate() const {
    if (seeds.empty()) throw std::invalid_argument("at least one seed URL is required");
    if (max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
    if (max_pages < 1) throw std::invalid_argument("max_pages must be >= 1");
    if (per_host_min_delay < Millis{0})
        throw std::invalid_argument("per_host_min_delay must be >= 0");
    if (request_timeout <= Millis{0}) throw std::invalid_argument("request_timeout must be > 0");
    if (fanout < 1) throw std::invalid_argument("fanout must be >= 1");
    for (const auto& seed : seeds) {
        try {
            const Url u = parse_absolute_url(seed);
            if (u.scheme != "http" && u.scheme != "https")
                throw std::invalid_argument("seed must be http(s): " + seed);
        } catch (const UrlError& e) {
            throw std::invalid_argument("invalid seed '" + seed + "': " + e.what());
        }
    }
}

std::string encode_crawl_report_line(const CrawlReportEntry& e) {
    json j{{"url", e.url},
           {"depth", e.depth},
           {"status", e.status},
           {"error", e.error.empty() ? json(nullptr) : json(e.error)},
           {"candidates_found", e.candidates_found},
           {"fetched_at", format_rfc3339(e.fetched_at)}};
    return j.dump();
}

namespace {

using SteadyClock = std::chrono::steady_clock;

struct FrontierItem {
    std::string url;
    int depth;
    std::string host_key;
    std::string seed_host;
};

struct HostState {
    bool busy = false;
    SteadyClock::time_point next_allowed{};
    bool robots_known = false;
    RobotsRules robots;
};

bool looks_like_document(const FetchResult& r) {
    if (r.content_type.empty()) return true;
    const auto& ct = r.content_type;
    return ct.find("html") != std::string::npos || ct.find("text/") != std::string::npos ||
           ct.find("xml") != std::string::npos;
}

class Crawl {
public:
    Crawl(const CrawlConfig& config, Fetcher& fetcher, PageRenderer& renderer)
        : config_(config), fetcher_(fetcher), renderer_(renderer) {
        options_.timeout = config.request_timeout;
        options_.max_body = config.max_body;
        options_.user_agent = config.user_agent;
        for (const auto& seed : config.seeds) {
            const std::string url = normalize_url(seed);
            if (!visited_.insert(url).second) continue;
            const Url u = parse_url_reference(url);
            frontier_.push_back({url, 0, u.scheme + "://" + u.authority(), u.host});
        }
    }

    CrawlResult run() {
        std::vector<std::jthread> workers;
        for (int i = 0; i < config_.fanout; ++i) workers.emplace_back([this] { work(); });
        workers.clear();

        CrawlResult result;
        result.candidates = std::move(candidates_);
        result.report = std::move(report_);
        result.pages_fetched = pages_dispatched_;
        return result;
    }

private:
    void work() {
        std::unique_lock lock(mu_);
        for (;;) {
            auto it = std::find_if(frontier_.begin(), frontier_.end(), [&](const FrontierItem& f) {
                return !hosts_[f.host_key].busy;
            });
            if (it != frontier_.end()) {
                FrontierItem item = std::move(*it);
                frontier_.erase(it);
                if (pages_dispatched_ >= static_cast<std::size_t>(config_.max_pages)) {
                    frontier_.clear();
                    cv_.notify_all();
                    continue;
                }
                ++pages_dispatched_;
                HostState& host = hosts_[item.host_key];
                host.busy = true;
                ++in_flight_;
                lock.unlock();
                process(item, host);
                lock.lock();
                host.busy = false;
                --in_flight_;
                cv_.notify_all();
            } else if (frontier_.empty() && in_flight_ == 0) {
                cv_.notify_all();
                return;
            } else {
                cv_.wait(lock);
            }
        }
    }

    // Caller owns `host` exclusively through its busy flag.
    FetchResult polite_fetch(HostState& host, const std::string& url, bool as_page) {
        std::this_thread::sleep_until(host.next_allowed);
        FetchResult r = as_page ? renderer_.render(url, options_) : fetcher_.get(url, options_);
        host.next_allowed = SteadyClock::now() + config_.per_host_min_delay;
        return r;
    }

    void load_robots(const FrontierItem& item, HostState& host) {
        host.robots_known = true;
        const std::string robots_url = item.host_key + "/robots.txt";
        FetchResult r = polite_fetch(host, robots_url, false);
        if (r.ok()) {
            host.robots = RobotsRules::parse(r.body, config_.user_agent);
        } else {
            spdlog::debug("robots.txt unavailable for {} ({}); allowing all", item.host_key,
                          to_string(r.error));
        }
    }

    void process(const FrontierItem& item, HostState& host) {
        if (config_.respect_robots && !host.robots_known) load_robots(item, host);

        CrawlReportEntry entry{item.url, item.depth, 0, {}, 0, utc_now()};
        if (config_.respect_robots && !host.robots.allowed(parse_url_reference(item.url).path_and_query())) {
            entry.error = "robots_disallowed";
            std::lock_guard lock(mu_);
            --pages_dispatched_;
            report_.push_back(std::move(entry));
            return;
        }

        FetchResult r = polite_fetch(host, item.url, true);
        entry.status = r.status;
        entry.fetched_at = r.started;
        if (!r.ok()) {
            entry.error = std::string(to_string(r.error));
            spdlog::debug("crawl {} failed: {} {}", item.url, entry.error, r.message);
            std::lock_guard lock(mu_);
            report_.push_back(std::move(entry));
            return;
        }

        std::vector<CandidateLink> found;
        std::vector<std::string> links;
        if (looks_like_document(r)) {
            found = extract_candidate_links(r.body, item.url);
            if (item.depth < config_.max_depth) {
                links = extract_page_links(r.body, item.url,
                                           config_.same_host_only ? std::optional(item.seed_host)
                                                                  : std::nullopt);
            }
        }
        entry.candidates_found = found.size();

        std::lock_guard lock(mu_);
        for (auto& c : found) {
            c.depth = item.depth;
            auto [pos, inserted] = candidate_index_.try_emplace(c.url, candidates_.size());
            if (inserted) candidates_.push_back(std::move(c));
            else if (candidates_[pos->second].depth > c.depth) candidates_[pos->second] = std::move(c);
        }
        for (auto& link : links) {
            if (classify_link(link, LinkContext::AnchorTarget)) continue;
            if (!visited_.insert(link).second) continue;
            const Url u = parse_url_reference(link);
            frontier_.push_back({link, item.depth + 1, u.scheme + "://" + u.authority(), item.seed_host});
        }
        report_.push_back(std::move(entry));
        cv_.notify_all();
    }

    const CrawlConfig& config_;
    Fetcher& fetcher_;
    PageRenderer& renderer_;
    FetchOptions options_;

    std::mutex mu_;
    std::condition_variable cv_;
    std::deque<FrontierItem> frontier_;
    std::set<std::string> visited_;
    std::map<std::string, HostState> hosts_;
    std::size_t in_flight_ = 0;
    std::size_t pages_dispatched_ = 0;
    std::vector<CandidateLink> candidates_;
    std::map<std::string, std::size_t> candidate_index_;
    std::vector<CrawlReportEntry> report_;
};

}  // namespace

CrawlResult crawl(const CrawlConfig& config, Fetcher& fetcher, PageRenderer& renderer) {
    config.validate();
    Crawl crawl(config, fetcher, renderer);
    return crawl.run();
}

CrawlResult crawl(const CrawlConfig& config, Fetcher& fetcher) {
    StaticPageRenderer renderer(fetcher);
    return crawl(config, fetcher, renderer);
}

}  // namespace camscout
