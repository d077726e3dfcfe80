#include "cli.hpp"

#include "camscout/archiver.hpp"
#include "camscout/crawler.hpp"
#include "camscout/http.hpp"
#include "camscout/jsonl.hpp"
#include "camscout/liveness.hpp"
#include "camscout/mockfleet.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <csignal>
#include <fstream>
#include <set>
#include <stop_token>
#include <thread>

namespace camscout::cli {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string fold_key(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
    return key;
}

Millis seconds_to_millis(double s) { return Millis(static_cast<Millis::rep>(std::llround(s * 1000.0))); }

struct Cli {
    CLI::App app{"camscout: discover, identify and archive live network cameras", "camscout"};
    std::map<std::string, CLI::App*> subs;

    explicit Cli(Invocation& inv) {
        app.require_subcommand(1, 1);
        app.fallthrough();
        auto& g = inv.global;
        app.add_option("--config", g.config, "Flat key = value file whose keys mirror the flags");
        app.add_option("--log-level", g.log_level, "trace, debug, info, warn, error or off")
            ->capture_default_str()
            ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));
        app.add_option("--user-agent", g.user_agent, "User-Agent header for every request")->capture_default_str();
        app.add_option("--request-timeout-secs", g.request_timeout_secs, "Per-request timeout")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);

        auto* d = app.add_subcommand("discover", "Crawl seed pages for camera-like links");
        auto& dopt = inv.discover;
        d->add_option("--seeds", dopt.seeds, "File with one seed URL per line ('#' comments allowed)");
        d->add_option("--depth", dopt.depth, "Maximum link depth from a seed")->capture_default_str()
            ->check(CLI::NonNegativeNumber);
        d->add_option("--max-pages", dopt.max_pages, "Page fetch budget")->capture_default_str()
            ->check(CLI::PositiveNumber);
        d->add_option("--delay-ms", dopt.delay_ms, "Minimum gap between requests to one host")
            ->capture_default_str()
            ->check(CLI::NonNegativeNumber);
        d->add_flag("--same-host", dopt.same_host, "Only follow links on the seed's host");
        d->add_option("--out", dopt.out, "Registry file to append candidates to")->capture_default_str();
        d->add_option("--report", dopt.report, "Crawl report file (default <out>.crawl.jsonl)");
        d->add_option("--fanout", dopt.fanout, "Hosts crawled concurrently")->capture_default_str()
            ->check(CLI::PositiveNumber);
        d->add_flag("--ignore-robots", dopt.ignore_robots, "Do not fetch or honour robots.txt");
        subs["discover"] = d;

        auto* i = app.add_subcommand("identify", "Sample candidates and record live/static verdicts");
        auto& iopt = inv.identify;
        i->add_option("--registry", iopt.registry, "Registry file")->capture_default_str();
        i->add_option("--samples", iopt.samples, "Samples per candidate")->capture_default_str()
            ->check(CLI::PositiveNumber);
        i->add_option("--interval-secs", iopt.interval_secs, "Gap between samples")->capture_default_str()
            ->check(CLI::PositiveNumber);
        i->add_option("--percent-threshold", iopt.percent_threshold, "Changed-pixel fraction threshold")
            ->capture_default_str()
            ->check(CLI::Range(0.0, 1.0));
        i->add_option("--luma-threshold", iopt.luma_threshold, "Mean luminance delta threshold")
            ->capture_default_str()
            ->check(CLI::NonNegativeNumber);
        i->add_option("--channel-tol", iopt.channel_tol, "Per-channel tolerance for a changed pixel")
            ->capture_default_str()
            ->check(CLI::Range(0, 255));
        i->add_option("--rule", iopt.rule, "How comparators combine: majority or any")->capture_default_str()
            ->check(CLI::IsMember({"majority", "any"}));
        i->add_option("--jobs", iopt.jobs, "Candidates sampled concurrently")->capture_default_str()
            ->check(CLI::PositiveNumber);
        subs["identify"] = i;

        auto* a = app.add_subcommand("archive", "Capture snapshots from enabled cameras on a fixed interval");
        auto& aopt = inv.archive;
        a->add_option("--registry", aopt.registry, "Registry file")->capture_default_str();
        a->add_option("--out", aopt.out, "Output root for images and manifest.jsonl")->capture_default_str();
        a->add_option("--interval-secs", aopt.interval_secs, "Cycle interval")->capture_default_str()
            ->check(CLI::PositiveNumber);
        a->add_option("--workers", aopt.workers, "Concurrent captures")->capture_default_str()
            ->check(CLI::PositiveNumber);
        a->add_option("--cycles", aopt.cycles, "Cycles to run (-1 runs until interrupted)")->capture_default_str();
        a->add_option("--timeout-secs", aopt.timeout_secs, "Per-camera capture timeout")->capture_default_str()
            ->check(CLI::PositiveNumber);
        a->add_option("--retries", aopt.retries, "Extra attempts after a failed capture")->capture_default_str()
            ->check(CLI::NonNegativeNumber);
        subs["archive"] = a;

        auto* f = app.add_subcommand("fleet", "Serve a mock camera fleet and print its index URL");
        auto& fopt = inv.fleet;
        f->add_option("--static", fopt.static_images, "Static image endpoints")->capture_default_str()
            ->check(CLI::NonNegativeNumber);
        f->add_option("--rotating", fopt.rotating, "Rotating image endpoints")->capture_default_str()
            ->check(CLI::NonNegativeNumber);
        f->add_option("--mjpeg", fopt.mjpeg, "MJPEG stream endpoints")->capture_default_str()
            ->check(CLI::NonNegativeNumber);
        f->add_option("--hls", fopt.hls, "HLS stream endpoints")->capture_default_str()
            ->check(CLI::NonNegativeNumber);
        f->add_option("--decoys", fopt.decoys, "Decoy HTML pages")->capture_default_str()
            ->check(CLI::NonNegativeNumber);
        f->add_option("--host", fopt.host, "Bind address")->capture_default_str();
        f->add_option("--port", fopt.port, "Bind port (0 picks one)")->capture_default_str()
            ->check(CLI::Range(0, 65535));
        f->add_option("--seed", fopt.seed, "Scene generator seed")->capture_default_str();
        f->add_option("--delay-ms", fopt.delay_ms, "Delay added to every camera request")->capture_default_str()
            ->check(CLI::NonNegativeNumber);
        f->add_option("--error-rate", fopt.error_rate, "Fraction of camera requests answered 503")
            ->capture_default_str()
            ->check(CLI::Range(0.0, 1.0));
        subs["fleet"] = f;

        auto* s = app.add_subcommand("stats", "Summarize a registry and an archive");
        auto& sopt = inv.stats;
        s->add_option("--registry", sopt.registry, "Registry file")->capture_default_str();
        s->add_option("--archive", sopt.archive, "Archive output root")->capture_default_str();
        subs["stats"] = s;
    }
};

std::string option_key(const CLI::Option* opt) { return opt->get_single_name(); }

CLI::Option* find_option(CLI::App* app, const std::string& key) {
    for (auto* opt : app->get_options()) {
        if (opt->get_name() == "--help" || opt->get_single_name() == "help") continue;
        if (option_key(opt) == key) return opt;
    }
    return nullptr;
}

void apply_config(Cli& cli, CLI::App* active, const std::string& active_name, const fs::path& path) {
    const auto entries = parse_config_file(path);
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<std::pair<const ConfigEntry*, CLI::Option*>> scoped, unscoped;

    for (const auto& e : entries) {
        if (!seen.insert({e.scope, e.key}).second)
            throw ConfigError(fmt::format("{}:{}: duplicate key '{}'", path.string(), e.line,
                                          e.scope.empty() ? e.key : e.scope + "." + e.key));
        if (e.key == "config")
            throw ConfigError(fmt::format("{}:{}: 'config' cannot be set from a config file", path.string(), e.line));
        if (!e.scope.empty()) {
            auto it = cli.subs.find(e.scope);
            CLI::App* owner = e.scope == "global" ? &cli.app : it == cli.subs.end() ? nullptr : it->second;
            if (!owner)
                throw ConfigError(fmt::format("{}:{}: unknown section '{}'", path.string(), e.line, e.scope));
            CLI::Option* opt = find_option(owner, e.key);
            if (!opt)
                throw ConfigError(fmt::format("{}:{}: unknown key '{}.{}'", path.string(), e.line, e.scope, e.key));
            if (owner == active || owner == &cli.app) scoped.emplace_back(&e, opt);
            continue;
        }
        CLI::Option* opt = find_option(active, e.key);
        if (!opt) opt = find_option(&cli.app, e.key);
        if (!opt) {
            const bool elsewhere = std::any_of(cli.subs.begin(), cli.subs.end(), [&](const auto& kv) {
                return kv.first != active_name && find_option(kv.second, e.key) != nullptr;
            });
            if (!elsewhere)
                throw ConfigError(fmt::format("{}:{}: unknown key '{}'", path.string(), e.line, e.key));
            continue;
        }
        unscoped.emplace_back(&e, opt);
    }

    std::set<CLI::Option*> from_file;
    auto apply = [&](const ConfigEntry& e, CLI::Option* opt) {
        if (opt->count() > 0 || from_file.count(opt)) return;
        try {
            opt->add_result(e.value);
            opt->run_callback();
        } catch (const CLI::Error& err) {
            throw ConfigError(fmt::format("{}:{}: bad value '{}' for '{}': {}", path.string(), e.line, e.value,
                                          e.key, err.what()));
        }
        from_file.insert(opt);
    };
    for (auto& [e, opt] : scoped) apply(*e, opt);
    for (auto& [e, opt] : unscoped) apply(*e, opt);
}

}  // namespace

std::vector<ConfigEntry> parse_config_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("{}:0: cannot open config file", path.string()));
    std::vector<ConfigEntry> out;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(fmt::format("{}:{}: expected 'key = value'", path.string(), line_no));
        std::string key = fold_key(trim(std::string_view(line).substr(0, eq)));
        std::string value = trim(std::string_view(line).substr(eq + 1));
        if (!value.empty() && value.front() != '"' && value.front() != '\'') {
            // Trailing comment: '#' or ';' after whitespace.
            for (std::size_t i = 1; i < value.size(); ++i) {
                if ((value[i] == '#' || value[i] == ';') && std::isspace(static_cast<unsigned char>(value[i - 1]))) {
                    value = trim(std::string_view(value).substr(0, i));
                    break;
                }
            }
        }
        if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front())
            value = value.substr(1, value.size() - 2);
        if (key.empty()) throw ConfigError(fmt::format("{}:{}: empty key", path.string(), line_no));
        if (key.rfind("--", 0) == 0) key = key.substr(2);
        ConfigEntry e;
        e.line = line_no;
        e.value = std::move(value);
        if (const auto dot = key.find('.'); dot != std::string::npos) {
            e.scope = key.substr(0, dot);
            e.key = key.substr(dot + 1);
        } else {
            e.key = std::move(key);
        }
        if (e.key.empty() || e.key.find_first_not_of("abcdefghijklmnopqrstuvwxyz0123456789-") != std::string::npos)
            throw ConfigError(fmt::format("{}:{}: invalid key '{}'", path.string(), line_no, e.key));
        out.push_back(std::move(e));
    }
    return out;
}

Invocation parse_invocation(const std::vector<std::string>& args) {
    Invocation inv;
    Cli cli(inv);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        cli.app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        inv.command = "help";
        CLI::App* target = &cli.app;
        for (auto* sub : cli.app.get_subcommands()) target = sub;
        inv.global.config = target->help();
        return inv;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what(), cli.app.help());
    }

    CLI::App* active = cli.app.get_subcommands().front();
    inv.command = active->get_name();
    if (!inv.global.config.empty()) apply_config(cli, active, inv.command, inv.global.config);

    if (inv.command == "discover" && inv.discover.seeds.empty())
        throw UsageError("discover: --seeds is required", active->help());
    return inv;
}

namespace {

void install_logger(std::ostream& err, const std::string& level) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
    auto logger = std::make_shared<spdlog::logger>("camscout", sink);
    logger->set_pattern("%Y-%m-%dT%H:%M:%S.%fZ level=%l %v", spdlog::pattern_time_type::utc);
    logger->set_level(spdlog::level::from_str(level));
    spdlog::set_default_logger(logger);
}

// Turns SIGINT/SIGTERM into a stop request while alive. Construct it before
// spawning worker threads so they inherit the blocked mask.
class SignalStop {
public:
    SignalStop() {
        sigemptyset(&set_);
        sigaddset(&set_, SIGINT);
        sigaddset(&set_, SIGTERM);
        pthread_sigmask(SIG_BLOCK, &set_, &old_);
        waiter_ = std::jthread([this](std::stop_token self) {
            const timespec tick{0, 200'000'000};
            while (!self.stop_requested()) {
                if (sigtimedwait(&set_, nullptr, &tick) > 0) {
                    spdlog::warn("event=interrupted");
                    source_.request_stop();
                    return;
                }
            }
        });
    }
    ~SignalStop() {
        waiter_.request_stop();
        waiter_.join();
        pthread_sigmask(SIG_SETMASK, &old_, nullptr);
    }
    std::stop_token token() const { return source_.get_token(); }

private:
    sigset_t set_{};
    sigset_t old_{};
    std::stop_source source_;
    std::jthread waiter_;
};

std::vector<std::string> read_seeds(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(fmt::format("cannot read seeds file {}", path.string()));
    std::vector<std::string> seeds;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (!line.empty()) seeds.push_back(line);
    }
    return seeds;
}

FetchOptions fetch_options(const GlobalOptions& g) {
    FetchOptions o;
    o.timeout = seconds_to_millis(g.request_timeout_secs);
    o.user_agent = g.user_agent;
    return o;
}

int do_discover(const Invocation& inv) {
    const auto& o = inv.discover;
    CrawlConfig config;
    config.seeds = read_seeds(o.seeds);
    config.max_depth = o.depth;
    config.max_pages = o.max_pages;
    config.same_host_only = o.same_host;
    config.per_host_min_delay = Millis(o.delay_ms);
    config.request_timeout = seconds_to_millis(inv.global.request_timeout_secs);
    config.user_agent = inv.global.user_agent;
    config.fanout = o.fanout;
    config.respect_robots = !o.ignore_robots;
    if (config.seeds.empty()) spdlog::warn("stage=discover event=no_seeds file={}", o.seeds);
    config.validate();

    spdlog::info("stage=discover event=start seeds={} depth={} max_pages={} delay_ms={}", config.seeds.size(),
                 config.max_depth, config.max_pages, o.delay_ms);
    HttpFetcher fetcher;
    CrawlResult result = crawl(config, fetcher);

    const fs::path report_path = o.report.empty() ? fs::path(o.out + ".crawl.jsonl") : fs::path(o.report);
    std::error_code ec;
    fs::remove(report_path, ec);
    {
        LineLog report(report_path);
        for (const auto& entry : result.report) report.append(encode_crawl_report_line(entry));
    }

    RegistryStore registry{fs::path(o.out)};
    std::size_t added = 0, known = 0, rejected = 0;
    for (const auto& c : result.candidates) {
        if (registry.contains_endpoint(c.url)) {
            ++known;
            continue;
        }
        CameraRecord record;
        record.endpoint = c.url;
        record.media_kind = c.media_kind;
        record.discovered_at = utc_now();
        record.source_page = c.source_page;
        record.verdict.note = "not yet identified";
        try {
            registry.upsert(std::move(record));
            ++added;
        } catch (const InvalidRecord& e) {
            ++rejected;
            spdlog::warn("stage=discover event=rejected url={} reason=\"{}\"", c.url, e.what());
        }
    }
    spdlog::info("stage=discover event=done pages={} candidates={} added={} already_known={} rejected={} "
                 "registry={} report={}",
                 result.pages_fetched, result.candidates.size(), added, known, rejected, o.out,
                 report_path.string());
    return 0;
}

int do_identify(const Invocation& inv) {
    const auto& o = inv.identify;
    LivenessPolicy policy;
    policy.n_samples = o.samples;
    policy.sample_interval = seconds_to_millis(o.interval_secs);
    policy.percent_threshold = o.percent_threshold;
    policy.luminance_threshold = o.luma_threshold;
    policy.channel_tolerance = o.channel_tol;
    policy.pair_rule = o.rule == "any" ? PairRule::AnyComparator : PairRule::Majority;
    policy.validate();

    if (!fs::exists(o.registry)) {
        spdlog::warn("stage=identify event=empty_registry registry={} reason=missing", o.registry);
        return 0;
    }
    RegistryStore registry{fs::path(o.registry)};
    const auto records = registry.list();
    if (records.empty()) {
        spdlog::warn("stage=identify event=empty_registry registry={}", o.registry);
        return 0;
    }
    spdlog::info("stage=identify event=start candidates={} samples={} interval_ms={}", records.size(),
                 policy.n_samples, policy.sample_interval.count());

    HttpFetcher fetcher;
    const FetchOptions options = fetch_options(inv.global);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> live{0}, fixed{0}, unknown{0};
    std::mutex error_mu;
    std::optional<std::string> first_error;

    auto worker = [&] {
        for (std::size_t i = next++; i < records.size(); i = next++) {
            CameraRecord record = records[i];
            const CandidateLink link{record.endpoint, record.media_kind, record.source_page, 0};
            try {
                LivenessVerdict verdict = identify_candidate(link, policy, fetcher, options);
                verdict.decided_at = utc_now();
                record.verdict = std::move(verdict);
                record.enabled = record.verdict.label == LivenessLabel::Live && is_capturable(record.media_kind);
                registry.upsert(record);
            } catch (const std::exception& e) {
                std::lock_guard lock(error_mu);
                if (!first_error) first_error = fmt::format("{}: {}", record.endpoint, e.what());
                continue;
            }
            switch (record.verdict.label) {
                case LivenessLabel::Live: ++live; break;
                case LivenessLabel::Static: ++fixed; break;
                case LivenessLabel::Indeterminate: ++unknown; break;
            }
            spdlog::debug("stage=identify event=verdict id={} url={} label={} note=\"{}\"", record.camera_id,
                          record.endpoint, to_string(record.verdict.label), record.verdict.note);
        }
    };
    {
        const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(o.jobs), records.size());
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    }
    if (first_error) throw std::runtime_error(*first_error);
    spdlog::info("stage=identify event=done live={} static={} indeterminate={}", live.load(), fixed.load(),
                 unknown.load());
    return 0;
}

int do_archive(const Invocation& inv) {
    const auto& o = inv.archive;
    ArchiveConfig config;
    config.interval = seconds_to_millis(o.interval_secs);
    config.workers = o.workers;
    config.per_camera_timeout = seconds_to_millis(o.timeout_secs);
    config.retries = o.retries;
    config.output_root = o.out;
    if (o.cycles >= 0) config.cycles = o.cycles;
    config.user_agent = inv.global.user_agent;
    config.validate();

    if (!fs::exists(o.registry)) throw std::runtime_error(fmt::format("registry {} does not exist", o.registry));
    RegistryStore registry{fs::path(o.registry)};
    const auto enabled = registry.list(CameraFilter{{}, true});
    if (enabled.empty()) {
        spdlog::warn("stage=archive event=no_enabled_cameras registry={}", o.registry);
        return 0;
    }
    spdlog::info("stage=archive event=start cameras={} interval_ms={} workers={} cycles={}", enabled.size(),
                 config.interval.count(), config.workers, o.cycles);

    SignalStop signals;
    HttpFetcher fetcher;
    const ArchiveReport report = run_archiver(registry, config, fetcher, signals.token());
    spdlog::info("stage=archive event=done cycles={} ok={} errors={} skipped={} out={}", report.cycles_run,
                 report.ok, report.errors, report.skipped, o.out);
    return 0;
}

int do_fleet(const Invocation& inv, std::ostream& out) {
    const auto& o = inv.fleet;
    FleetSpec spec;
    spec.static_images = o.static_images;
    spec.rotating_images = o.rotating;
    spec.mjpeg_streams = o.mjpeg;
    spec.hls_streams = o.hls;
    spec.decoy_pages = o.decoys;
    spec.host = o.host;
    spec.port = o.port;
    spec.seed = o.seed;
    spec.endpoint_delay = Millis(o.delay_ms);
    spec.error_rate = o.error_rate;

    SignalStop signals;
    MockFleet fleet(spec);
    out << fleet.index_url() << std::endl;
    spdlog::info("stage=fleet event=serving url={} endpoints={}", fleet.index_url(), fleet.endpoints().size());
    const auto token = signals.token();
    while (!token.stop_requested()) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    fleet.stop();
    spdlog::info("stage=fleet event=stopped requests={}", fleet.request_log().size());
    return 0;
}

int do_stats(const Invocation& inv, std::ostream& out) {
    const fs::path manifest = fs::path(inv.stats.archive) / kManifestFileName;
    const StatsReport report = compute_stats(inv.stats.registry, manifest);
    for (const auto& p : report.problems) spdlog::warn("stage=stats event=unreadable {}", p);
    out << format_stats(report);
    return report.problems.size() >= 2 ? 1 : 0;
}

}  // namespace

StatsReport compute_stats(const fs::path& registry, const fs::path& manifest) {
    StatsReport report;
    std::map<CameraId, CameraStats> cameras;

    if (!fs::exists(registry)) {
        report.problems.push_back(fmt::format("registry {}: not found", registry.string()));
    } else {
        try {
            for (const auto& [id, record] : replay(read_lines(registry).lines)) {
                auto& c = cameras[id];
                c.camera_id = id;
                c.endpoint = record.endpoint;
                c.media_kind = record.media_kind;
                c.label = record.verdict.label;
                c.enabled = record.enabled;
                ++report.by_kind[std::string(to_string(record.media_kind))];
                ++report.by_verdict[std::string(to_string(record.verdict.label))];
            }
            report.cameras = cameras.size();
        } catch (const std::exception& e) {
            report.problems.push_back(fmt::format("registry {}: {}", registry.string(), e.what()));
        }
    }

    std::set<Timestamp> cycle_starts;
    if (!fs::exists(manifest)) {
        report.problems.push_back(fmt::format("manifest {}: not found", manifest.string()));
    } else {
        try {
            for (const auto& entry : read_manifest(manifest)) {
                auto& c = cameras[entry.camera_id];
                c.camera_id = entry.camera_id;
                if (entry.status == CaptureStatus::Ok) {
                    ++c.ok;
                    ++report.captures_ok;
                    c.bytes += entry.bytes_written;
                    report.total_bytes += entry.bytes_written;
                } else {
                    ++c.errors;
                    ++report.captures_error;
                }
                cycle_starts.insert(entry.scheduled_for);
            }
        } catch (const std::exception& e) {
            report.problems.push_back(fmt::format("manifest {}: {}", manifest.string(), e.what()));
        }
    }

    if (cycle_starts.size() >= 2) {
        const double span = std::chrono::duration<double>(*cycle_starts.rbegin() - *cycle_starts.begin()).count();
        const double interval = span / static_cast<double>(cycle_starts.size() - 1);
        if (interval > 0) {
            const double per_cycle = static_cast<double>(report.total_bytes) / static_cast<double>(cycle_starts.size());
            report.bytes_per_week = per_cycle * (7.0 * 24 * 3600 / interval);
        }
    }

    for (auto& [id, c] : cameras) report.per_camera.push_back(std::move(c));
    return report;
}

std::string format_stats(const StatsReport& r) {
    std::string out = fmt::format("cameras: {}\n", r.cameras);
    for (const auto& [kind, n] : r.by_kind) out += fmt::format("  kind {}: {}\n", kind, n);
    for (const auto& [label, n] : r.by_verdict) out += fmt::format("  verdict {}: {}\n", label, n);
    out += fmt::format("captures: {} ok, {} error\n", r.captures_ok, r.captures_error);
    out += fmt::format("total bytes archived: {}\n", r.total_bytes);
    if (r.bytes_per_week)
        out += fmt::format("capture rate: {:.0f} bytes/week ({:.3f} GiB/week)\n", *r.bytes_per_week,
                           *r.bytes_per_week / (1024.0 * 1024.0 * 1024.0));
    else
        out += "capture rate: n/a (fewer than two cycles)\n";
    out += "per camera:\n";
    for (const auto& c : r.per_camera) {
        const auto rate = c.success_rate();
        out += fmt::format("  {} {} {} {} ok={} error={} success={} bytes={} {}\n", c.camera_id,
                           c.media_kind ? to_string(*c.media_kind) : "unknown",
                           c.label ? to_string(*c.label) : "unknown", c.enabled ? "enabled" : "disabled", c.ok,
                           c.errors, rate ? fmt::format("{:.2f}", *rate) : "n/a", c.bytes, c.endpoint);
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Invocation inv;
    try {
        inv = parse_invocation(args);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << e.usage;
        return 2;
    } catch (const ConfigError& e) {
        err << "error: config: " << e.what() << "\n";
        return 2;
    }
    if (inv.command == "help") {
        out << inv.global.config;
        return 0;
    }

    install_logger(err, inv.global.log_level);
    int code = 1;
    try {
        if (inv.command == "discover") code = do_discover(inv);
        else if (inv.command == "identify") code = do_identify(inv);
        else if (inv.command == "archive") code = do_archive(inv);
        else if (inv.command == "fleet") code = do_fleet(inv, out);
        else if (inv.command == "stats") code = do_stats(inv, out);
    } catch (const std::exception& e) {
        spdlog::error("stage={} event=failed error=\"{}\"", inv.command, e.what());
        err << "error: " << inv.command << ": " << e.what() << "\n";
        code = 1;
    }
    spdlog::default_logger()->flush();
    spdlog::set_default_logger(std::make_shared<spdlog::logger>(
        "camscout", std::make_shared<spdlog::sinks::ostream_sink_mt>(std::cerr)));
    return code;
}

}  // namespace camscout::cli
