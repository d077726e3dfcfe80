#include "cli.hpp"

#include "camscout/archiver.hpp"
#include "camscout/crawler.hpp"
#include "camscout/digest.hpp"
#include "camscout/http.hpp"
#include "camscout/jsonl.hpp"
#include "camscout/liveness.hpp"
#include "camscout/mjpeg.hpp"
#include "camscout/mockfleet.hpp"
#include "camscout/registry.hpp"
#include "camscout/url.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <csignal>
#include <fcntl.h>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>

using namespace camscout;
namespace fs = std::filesystem;
using SteadyClock = std::chrono::steady_clock;

namespace {

// Pinned tolerances.
constexpr auto kDiscoveryBudget = std::chrono::minutes(5);
constexpr int kOraclePairs = 1000;
constexpr double kLumaTolerance = 1e-9;
constexpr int kSnapshotCalls = 100;
constexpr double kArchiveOkFraction = 0.99;
constexpr auto kCaptureSlack = std::chrono::seconds(2);
constexpr double kScalingRatio = 0.25;

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Workdir {
public:
    explicit Workdir(const std::string& tag) {
        path_ = fs::temp_directory_path() / fmt::format("camscout-acceptance-{}-{}", tag, ::getpid());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~Workdir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    const fs::path& path() const { return path_; }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

std::string seconds(SteadyClock::duration d) {
    return fmt::format("{:.1f}s", std::chrono::duration<double>(d).count());
}

int run_cli(const std::vector<std::string>& args, std::string* log = nullptr) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (log) *log = err.str();
    return code;
}

// Every still-image endpoint, enabled for capture.
void add_fleet_cameras(const MockFleet& fleet, RegistryStore& store) {
    for (const auto& e : fleet.endpoints()) {
        if (e.kind != FleetEndpointKind::StaticImage && e.kind != FleetEndpointKind::RotatingImage) continue;
        CameraRecord r;
        r.endpoint = fleet.url_for(e.path);
        r.media_kind = MediaKind::StillImage;
        r.discovered_at = utc_now();
        r.source_page = fleet.index_url();
        r.verdict.label = LivenessLabel::Live;
        r.enabled = true;
        store.upsert(r);
    }
}

Outcome discovery_correctness() {
    FleetSpec spec;
    spec.rotating_images = 20;
    spec.static_images = 10;
    spec.mjpeg_streams = 5;
    spec.hls_streams = 5;
    spec.decoy_pages = 10;
    MockFleet fleet(spec);
    Workdir dir("discovery");
    std::ofstream(dir / "seeds.txt") << fleet.index_url() << "\n";
    const std::string registry = (dir / "registry.jsonl").string();

    const auto start = SteadyClock::now();
    std::string log;
    if (const int code = run_cli({"discover", "--seeds", (dir / "seeds.txt").string(), "--out", registry}, &log))
        return {false, fmt::format("discover exited {}: {}", code, log)};
    if (const int code = run_cli({"identify", "--registry", registry}, &log))
        return {false, fmt::format("identify exited {}: {}", code, log)};
    const auto elapsed = SteadyClock::now() - start;

    std::map<std::string, LivenessLabel> predicted;
    for (const auto& rec : RegistryStore(registry).list()) predicted[rec.endpoint] = rec.verdict.label;

    int tp = 0, fp = 0, fn = 0, static_ok = 0, static_total = 0;
    std::set<std::string> truth_live;
    for (const auto& e : fleet.endpoints()) {
        if (!e.label) continue;
        const std::string url = normalize_url(fleet.url_for(e.path));
        const auto it = predicted.find(url);
        if (*e.label == LivenessLabel::Live) {
            truth_live.insert(url);
            if (it != predicted.end() && it->second == LivenessLabel::Live) ++tp;
            else ++fn;
        } else {
            ++static_total;
            if (it != predicted.end() && it->second == LivenessLabel::Static) ++static_ok;
        }
    }
    for (const auto& [url, label] : predicted)
        if (label == LivenessLabel::Live && !truth_live.contains(url)) ++fp;

    const double precision = tp + fp == 0 ? 0.0 : double(tp) / (tp + fp);
    const double recall = tp + fn == 0 ? 0.0 : double(tp) / (tp + fn);
    const bool pass = precision == 1.0 && recall == 1.0 && static_ok == static_total && elapsed < kDiscoveryBudget;
    return {pass, fmt::format("live precision={:.3f} recall={:.3f} ({}/{}), static {}/{}, candidates={}, runtime {}",
                              precision, recall, tp, tp + fn, static_ok, static_total, predicted.size(),
                              seconds(elapsed))};
}

Raster random_raster(std::mt19937_64& rng, int w, int h) {
    std::uniform_int_distribution<int> byte(0, 255);
    Raster r(w, h);
    for (auto& p : r.pixels()) p = {std::uint8_t(byte(rng)), std::uint8_t(byte(rng)), std::uint8_t(byte(rng))};
    return r;
}

Outcome comparator_oracles() {
    std::mt19937_64 rng(20200601);
    std::uniform_int_distribution<int> tol(0, 40);
    std::bernoulli_distribution perturb(0.5);
    std::uniform_int_distribution<int> nudge(-30, 30);
    int percent_mismatch = 0, luma_mismatch = 0;
    double worst_luma = 0;
    for (int i = 0; i < kOraclePairs; ++i) {
        const Raster a = random_raster(rng, 8, 8);
        Raster b = random_raster(rng, 8, 8);
        // Half the pairs are small perturbations so tolerances matter.
        if (perturb(rng)) {
            b = a;
            for (auto& p : b.pixels()) {
                p.r = std::uint8_t(std::clamp(p.r + nudge(rng), 0, 255));
                p.g = std::uint8_t(std::clamp(p.g + nudge(rng), 0, 255));
                p.b = std::uint8_t(std::clamp(p.b + nudge(rng), 0, 255));
            }
        }
        const int t = tol(rng);

        int changed = 0;
        double la = 0, lb = 0;
        for (int y = 0; y < 8; ++y) {
            for (int x = 0; x < 8; ++x) {
                const Rgb& p = a.at(x, y);
                const Rgb& q = b.at(x, y);
                if (std::abs(p.r - q.r) > t || std::abs(p.g - q.g) > t || std::abs(p.b - q.b) > t) ++changed;
                la += 0.299 * p.r + 0.587 * p.g + 0.114 * p.b;
                lb += 0.299 * q.r + 0.587 * q.g + 0.114 * q.b;
            }
        }
        const double oracle_percent = changed / 64.0;
        const double oracle_luma = std::fabs(la / 64.0 - lb / 64.0);
        if (percent_diff(a, b, t) != oracle_percent) ++percent_mismatch;
        const double err = std::fabs(luminance_diff(a, b) - oracle_luma);
        worst_luma = std::max(worst_luma, err);
        if (err > kLumaTolerance) ++luma_mismatch;
    }
    return {percent_mismatch == 0 && luma_mismatch == 0,
            fmt::format("{} pairs, percent mismatches={}, luma mismatches={}, max luma error={:.3g}", kOraclePairs,
                        percent_mismatch, luma_mismatch, worst_luma)};
}

LivenessPolicy random_policy(std::mt19937_64& rng) {
    LivenessPolicy p;
    p.n_samples = std::uniform_int_distribution<int>(2, 6)(rng);
    p.channel_tolerance = std::uniform_int_distribution<int>(0, 255)(rng);
    p.percent_threshold = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    p.luminance_threshold = std::uniform_real_distribution<double>(0.0, 255.0)(rng);
    p.pair_rule = std::bernoulli_distribution(0.5)(rng) ? PairRule::Majority : PairRule::AnyComparator;
    p.set_fraction = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
    return p;
}

SampleSet sample_set(const std::vector<std::string>& bodies) {
    SampleSet set;
    set.candidate = {"http://cam.example/snap.jpg", MediaKind::StillImage, "http://cam.example/", 0};
    const Timestamp t0 = *parse_rfc3339("2020-06-01T00:00:00Z");
    for (std::size_t i = 0; i < bodies.size(); ++i)
        set.samples.push_back({t0 + std::chrono::seconds(20) * static_cast<int>(i), bodies[i], std::nullopt});
    decode_samples(set);
    return set;
}

Outcome classification_determinism() {
    std::mt19937_64 rng(7);
    int identical_live = 0, single_not_indeterminate = 0, nondeterministic = 0;
    constexpr int kTrials = 300;
    for (int i = 0; i < kTrials; ++i) {
        const LivenessPolicy policy = random_policy(rng);
        const std::string body = i % 3 == 0 ? std::string("not an image ") + std::to_string(i)
                                            : encode_jpeg(random_raster(rng, 16, 12), 80);
        const auto count = static_cast<std::size_t>(std::uniform_int_distribution<int>(2, 6)(rng));
        if (classify(sample_set(std::vector<std::string>(count, body)), policy).label == LivenessLabel::Live)
            ++identical_live;
        if (classify(sample_set({body}), policy).label != LivenessLabel::Indeterminate) ++single_not_indeterminate;

        std::vector<std::string> varied;
        for (std::size_t k = 0; k < count; ++k) varied.push_back(generate_image(static_cast<std::uint64_t>(i), 1, k));
        const SampleSet fixed = sample_set(varied);
        const std::string first = serialize_verdict(classify(fixed, policy));
        for (int rep = 0; rep < 5; ++rep)
            if (serialize_verdict(classify(fixed, policy)) != first) ++nondeterministic;
    }
    return {identical_live == 0 && single_not_indeterminate == 0 && nondeterministic == 0,
            fmt::format("{} random policies: identical sets Live={}, single-sample not Indeterminate={}, "
                        "non-identical reclassifications={}",
                        kTrials, identical_live, single_not_indeterminate, nondeterministic)};
}

Outcome mjpeg_fidelity() {
    FleetSpec spec;
    spec.mjpeg_streams = 1;
    spec.frame_period = Millis{40};
    MockFleet fleet(spec);
    HttpFetcher http;
    const std::string path = fleet.endpoints().front().path;
    int failures = 0, unframed = 0, undecodable = 0, unknown = 0;
    for (int i = 0; i < kSnapshotCalls; ++i) {
        const auto r = sample_mjpeg_frame(fleet.url_for(path), http, {});
        if (!r.ok()) {
            ++failures;
            continue;
        }
        if (!has_jpeg_framing(*r.frame)) ++unframed;
        if (!try_decode_image(*r.frame)) ++undecodable;
        if (!fleet.emitted_frames(path).contains(sha256_hex(*r.frame))) ++unknown;
    }
    return {failures + unframed + undecodable + unknown == 0,
            fmt::format("{} snapshots: failed={}, bad framing={}, undecodable={}, not emitted={}", kSnapshotCalls,
                        failures, unframed, undecodable, unknown)};
}

Outcome archiver_completeness() {
    FleetSpec spec;
    spec.static_images = 50;
    spec.rotating_images = 50;
    MockFleet fleet(spec);
    RegistryStore registry;
    add_fleet_cameras(fleet, registry);
    Workdir dir("archive");
    ArchiveConfig config;
    config.interval = Millis{10'000};
    config.cycles = 5;
    config.workers = 16;
    config.output_root = dir / "out";
    HttpFetcher http;
    const auto report = run_archiver(registry, config, http);

    const auto entries = read_manifest(config.output_root / kManifestFileName);
    std::size_t ok = 0, late = 0;
    for (const auto& e : entries) {
        if (e.status != CaptureStatus::Ok) continue;
        ++ok;
        if (e.captured_at - e.scheduled_for >= config.per_camera_timeout + kCaptureSlack) ++late;
    }
    const auto rec = reconcile_output_root(config.output_root);
    const std::size_t expected = 500;
    const bool pass = entries.size() == expected && double(ok) >= kArchiveOkFraction * expected && late == 0 &&
                      rec.clean() && rec.ok_entries == ok;
    return {pass, fmt::format("{} entries ({} expected), {} Ok, {} late, cycles={}, reconcile missing={} "
                              "mismatched={} orphans={} malformed={}",
                              entries.size(), expected, ok, late, report.cycles_run, rec.missing_files.size(),
                              rec.digest_mismatches.size(), rec.orphan_files.size(), rec.malformed_lines.size())};
}

Outcome parallel_scaling() {
    FleetSpec spec;
    spec.static_images = 40;
    spec.endpoint_delay = Millis{500};
    MockFleet fleet(spec);
    RegistryStore registry;
    add_fleet_cameras(fleet, registry);
    Workdir dir("scaling");
    HttpFetcher http;
    const auto timed = [&](int workers) {
        ArchiveConfig config;
        config.interval = Millis{600'000};
        config.cycles = 1;
        config.workers = workers;
        config.output_root = dir / fmt::format("w{}", workers);
        const auto start = SteadyClock::now();
        const auto report = run_archiver(registry, config, http);
        return std::pair{SteadyClock::now() - start, report.ok};
    };
    const auto [serial, serial_ok] = timed(1);
    const auto [parallel, parallel_ok] = timed(8);
    const double ratio = std::chrono::duration<double>(parallel) / std::chrono::duration<double>(serial);
    return {ratio <= kScalingRatio && serial_ok == 40 && parallel_ok == 40,
            fmt::format("workers=1 {} ({} ok), workers=8 {} ({} ok), ratio {:.3f}", seconds(serial), serial_ok,
                        seconds(parallel), parallel_ok, ratio)};
}

Outcome crawler_politeness() {
    FleetSpec spec;
    spec.static_images = 3;
    spec.rotating_images = 2;
    spec.mjpeg_streams = 1;
    spec.decoy_pages = 12;
    MockFleet fleet(spec);
    CrawlConfig config;
    config.seeds = {fleet.index_url(), fleet.url_for("/pages/decoy3.html")};
    config.max_depth = 2;
    config.max_pages = 8;
    config.per_host_min_delay = Millis{300};
    config.same_host_only = true;
    HttpFetcher http;
    const auto result = crawl(config, http);

    const auto log = fleet.request_log();
    std::set<std::string> seen;
    int duplicates = 0, page_fetches = 0, short_gaps = 0, too_deep = 0;
    for (std::size_t i = 0; i < log.size(); ++i) {
        if (i > 0 && log[i].at - log[i - 1].at < config.per_host_min_delay) ++short_gaps;
        if (log[i].path == "/robots.txt") continue;
        ++page_fetches;
        if (!seen.insert(normalize_url(fleet.url_for(log[i].path))).second) ++duplicates;
    }
    for (const auto& c : result.candidates)
        if (c.depth > config.max_depth) ++too_deep;
    for (const auto& e : result.report)
        if (e.depth > config.max_depth) ++too_deep;
    const bool pass = duplicates == 0 && short_gaps == 0 && page_fetches <= config.max_pages && too_deep == 0 &&
                      page_fetches > 0;
    return {pass, fmt::format("{} page fetches (max {}), duplicates={}, gaps under {}ms={}, beyond depth={}, "
                              "candidates={}",
                              page_fetches, config.max_pages, duplicates, config.per_host_min_delay.count(),
                              short_gaps, too_deep, result.candidates.size())};
}

pid_t spawn(const std::vector<std::string>& args, const fs::path& log) {
    const pid_t pid = ::fork();
    if (pid != 0) return pid;
    const int fd = ::open(log.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd >= 0) {
        ::dup2(fd, STDOUT_FILENO);
        ::dup2(fd, STDERR_FILENO);
    }
    std::vector<char*> argv;
    for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    ::execv(argv[0], argv.data());
    ::_exit(127);
}

int wait_exit(pid_t pid) {
    int status = 0;
    ::waitpid(pid, &status, 0);
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    if (WIFSIGNALED(status)) return 128 + WTERMSIG(status);
    return -1;
}

Outcome restart_safety() {
    FleetSpec spec;
    spec.static_images = 12;
    spec.rotating_images = 12;
    spec.endpoint_delay = Millis{250};
    MockFleet fleet(spec);
    Workdir dir("restart");
    const fs::path registry = dir / "registry.jsonl";
    {
        RegistryStore store(registry);
        add_fleet_cameras(fleet, store);
    }
    const fs::path out = dir / "out";
    const std::vector<std::string> base = {CAMSCOUT_BINARY, "archive", "--registry", registry.string(),
                                           "--out", out.string(), "--interval-secs", "1", "--workers", "4",
                                           "--timeout-secs", "5", "--log-level", "warn"};

    auto first = base;
    first.insert(first.end(), {"--cycles", "-1"});
    const pid_t pid = spawn(first, dir / "first.log");
    // Kill mid-cycle: each cycle needs ~1.5s of captures, so 2.3s lands inside cycle 1.
    std::this_thread::sleep_for(std::chrono::milliseconds(2300));
    ::kill(pid, SIGKILL);
    const int killed = wait_exit(pid);
    const std::size_t before = fs::exists(out / kManifestFileName) ? read_lines(out / kManifestFileName).lines.size() : 0;

    auto second = base;
    second.insert(second.end(), {"--cycles", "1"});
    const int code = wait_exit(spawn(second, dir / "second.log"));
    const auto rec = reconcile_output_root(out);
    const bool pass = killed == 128 + SIGKILL && code == 0 && before > 0 && rec.clean() && rec.ok_entries > before;
    return {pass, fmt::format("killed run left {} entries, rerun exit {}, reconcile ok={} error={} missing={} "
                              "mismatched={} orphans={} malformed={}",
                              before, code, rec.ok_entries, rec.error_entries, rec.missing_files.size(),
                              rec.digest_mismatches.size(), rec.orphan_files.size(), rec.malformed_lines.size())};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"discovery correctness", discovery_correctness},
        {"comparator oracle equivalence", comparator_oracles},
        {"classification determinism", classification_determinism},
        {"MJPEG snapshot fidelity", mjpeg_fidelity},
        {"archiver completeness", archiver_completeness},
        {"parallel scaling", parallel_scaling},
        {"crawler politeness and budgets", crawler_politeness},
        {"restart safety", restart_safety},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, fmt::format("threw: {}", e.what())};
        }
        if (!o.pass) ++failed;
        std::cout << fmt::format("{} {}. {}: {}", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail)
                  << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
