#include "camscout/archiver.hpp"

#include "camscout/digest.hpp"
#include "camscout/hls.hpp"
#include "camscout/mjpeg.hpp"
#include "camscout/raster.hpp"
#include "json_codec.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <atomic>
#include <cerrno>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace camscout {

namespace fs = std::filesystem;

void ArchiveConfig::validate() const {
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (interval <= Millis{0}) throw std::invalid_argument("interval must be > 0");
    if (per_camera_timeout <= Millis{0}) throw std::invalid_argument("per_camera_timeout must be > 0");
    if (retries < 0) throw std::invalid_argument("retries must be >= 0");
    if (cycles && *cycles < 0) throw std::invalid_argument("cycles must be >= 0");
    if (output_root.empty()) throw std::invalid_argument("output_root is required");
}

std::string encode_manifest_line(const ManifestEntry& e) {
    json j{{"camera_id", e.camera_id},
           {"cycle_index", e.cycle_index},
           {"scheduled_for", format_rfc3339(e.scheduled_for)},
           {"captured_at", format_rfc3339(e.captured_at)},
           {"status", e.status == CaptureStatus::Ok ? "Ok" : "Error"},
           {"bytes_written", e.bytes_written},
           {"content_digest", e.content_digest},
           {"attempts", e.attempts}};
    put_optional(j, "error_kind", e.error_kind);
    put_optional(j, "relative_path", e.relative_path);
    return j.dump();
}

ManifestEntry decode_manifest_line(std::string_view line) {
    try {
        const json j = json::parse(line);
        ManifestEntry e;
        e.camera_id = j.at("camera_id").get<std::string>();
        e.cycle_index = j.at("cycle_index").get<int>();
        e.scheduled_for = timestamp_from_json(j.at("scheduled_for"));
        e.captured_at = timestamp_from_json(j.at("captured_at"));
        const auto status = j.at("status").get<std::string>();
        if (status == "Ok")
            e.status = CaptureStatus::Ok;
        else if (status == "Error")
            e.status = CaptureStatus::Error;
        else
            throw std::invalid_argument("unknown status " + status);
        e.bytes_written = j.at("bytes_written").get<std::uint64_t>();
        e.content_digest = j.value("content_digest", std::string{});
        e.attempts = j.value("attempts", 0);
        e.error_kind = get_optional<std::string>(j, "error_kind");
        e.relative_path = get_optional<std::string>(j, "relative_path");
        if ((e.status == CaptureStatus::Ok) != (e.relative_path.has_value() && e.bytes_written > 0))
            throw std::invalid_argument("manifest entry violates Ok <=> stored file");
        return e;
    } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string("malformed manifest line: ") + ex.what());
    }
}

std::vector<ManifestEntry> read_manifest(const fs::path& manifest_path) {
    std::vector<ManifestEntry> out;
    for (const auto& line : read_lines(manifest_path).lines) out.push_back(decode_manifest_line(line));
    return out;
}

std::string storage_path(const CameraId& camera_id, Timestamp captured_at, std::string_view extension) {
    const auto c = to_civil_utc(captured_at);
    return fmt::format("{}/{:04}/{:02}/{:02}/{:02}{:02}{:02}.{}", camera_id, c.year, c.month, c.day,
                       c.hour, c.minute, c.second, extension);
}

std::string unique_storage_path(const fs::path& root, const CameraId& camera_id, Timestamp captured_at,
                                std::string_view extension) {
    const std::string base = storage_path(camera_id, captured_at, extension);
    std::error_code ec;
    if (!fs::exists(root / base, ec)) return base;
    const auto dot = base.rfind('.');
    const std::string stem = base.substr(0, dot);
    for (int n = 1;; ++n) {
        std::string candidate = fmt::format("{}_{}.{}", stem, n, extension);
        if (!fs::exists(root / candidate, ec)) return candidate;
    }
}

std::vector<ArchiveJob> plan_cycle(const RegistryStore& registry, int cycle_index, Timestamp scheduled_for) {
    CameraFilter filter;
    filter.enabled_only = true;
    filter.kinds = {MediaKind::StillImage, MediaKind::MjpegStream, MediaKind::HlsStream};
    std::vector<ArchiveJob> jobs;
    for (auto& camera : registry.list(filter))
        jobs.push_back(ArchiveJob{std::move(camera), cycle_index, scheduled_for});
    return jobs;
}

namespace {

struct Payload {
    std::string bytes;
    std::string extension;
    Timestamp captured_at{};
    std::string error_kind;
    std::string message;
};

std::string still_extension(std::string_view bytes) {
    switch (sniff_image_format(bytes)) {
        case ImageFormat::Jpeg: return "jpg";
        case ImageFormat::Png: return "png";
        case ImageFormat::Unknown: break;
    }
    return "img";
}

Payload fetch_payload(const CameraRecord& camera, Fetcher& fetcher, const FetchOptions& options) {
    Payload p;
    switch (camera.media_kind) {
        case MediaKind::StillImage: {
            FetchResult r = fetcher.get(camera.endpoint, options);
            p.captured_at = r.started;
            if (!r.ok()) {
                p.error_kind = std::string(to_string(r.error));
                p.message = r.message;
                return p;
            }
            p.extension = still_extension(r.body);
            p.bytes = std::move(r.body);
            break;
        }
        case MediaKind::MjpegStream: {
            p.captured_at = utc_now();
            FrameResult f = sample_mjpeg_frame(camera.endpoint, fetcher, options);
            if (!f.ok()) {
                p.error_kind = f.error_kind();
                p.message = f.message;
                return p;
            }
            p.bytes = std::move(*f.frame);
            p.extension = "jpg";
            break;
        }
        case MediaKind::HlsStream: {
            MediaPlaylistFetch playlist = fetch_media_playlist(camera.endpoint, fetcher, options);
            if (!playlist.ok()) {
                p.captured_at = utc_now();
                p.error_kind = playlist.fetch_error != FetchError::None
                                   ? std::string(to_string(playlist.fetch_error))
                                   : "playlist_parse";
                p.message = playlist.error;
                return p;
            }
            auto segment = latest_segment_url(*playlist.playlist, playlist.url);
            if (!segment) {
                p.captured_at = utc_now();
                p.error_kind = "empty_playlist";
                return p;
            }
            FetchResult r = fetcher.get(*segment, options);
            p.captured_at = r.started;
            if (!r.ok()) {
                p.error_kind = std::string(to_string(r.error));
                p.message = r.message;
                return p;
            }
            p.bytes = std::move(r.body);
            p.extension = "ts";
            break;
        }
        case MediaKind::RtspLink:
        case MediaKind::RtmpLink:
            p.captured_at = utc_now();
            p.error_kind = "unsupported_kind";
            return p;
    }
    if (p.bytes.empty()) {
        p.error_kind = "empty_body";
        p.message = "endpoint returned no bytes";
    }
    return p;
}

void write_file_atomically(const fs::path& final_path, std::string_view bytes) {
    fs::create_directories(final_path.parent_path());
    fs::path temp = final_path;
    temp += ".tmp";
    const int fd = ::open(temp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
    if (fd < 0) throw StorageError("cannot create " + temp.string() + ": " + std::strerror(errno));
    std::size_t off = 0;
    while (off < bytes.size()) {
        const ssize_t n = ::write(fd, bytes.data() + off, bytes.size() - off);
        if (n < 0) {
            if (errno == EINTR) continue;
            const int err = errno;
            ::close(fd);
            ::unlink(temp.c_str());
            throw StorageError("write " + temp.string() + " failed: " + std::strerror(err));
        }
        off += static_cast<std::size_t>(n);
    }
    ::fsync(fd);
    ::close(fd);
    if (::rename(temp.c_str(), final_path.c_str()) != 0) {
        const int err = errno;
        ::unlink(temp.c_str());
        throw StorageError("rename to " + final_path.string() + " failed: " + std::strerror(err));
    }
}

}  // namespace

ManifestEntry capture(const ArchiveJob& job, const ArchiveConfig& config, Fetcher& fetcher, LineLog& manifest) {
    FetchOptions options;
    options.timeout = config.per_camera_timeout;
    options.user_agent = config.user_agent;

    ManifestEntry entry;
    entry.camera_id = job.camera.camera_id;
    entry.cycle_index = job.cycle_index;
    entry.scheduled_for = job.scheduled_for;

    Payload payload;
    const int attempts = 1 + config.retries;
    for (int attempt = 1; attempt <= attempts; ++attempt) {
        entry.attempts = attempt;
        payload = fetch_payload(job.camera, fetcher, options);
        if (payload.error_kind.empty()) break;
        if (attempt < attempts) std::this_thread::sleep_for(config.retry_backoff * attempt);
    }
    entry.captured_at = payload.captured_at;

    if (payload.error_kind.empty()) {
        const std::string rel = unique_storage_path(config.output_root, job.camera.camera_id,
                                                    payload.captured_at, payload.extension);
        try {
            write_file_atomically(config.output_root / rel, payload.bytes);
            entry.status = CaptureStatus::Ok;
            entry.relative_path = rel;
            entry.bytes_written = payload.bytes.size();
            entry.content_digest = sha256_hex(payload.bytes);
        } catch (const std::exception& e) {
            payload.error_kind = "storage";
            payload.message = e.what();
        }
    }
    if (entry.status != CaptureStatus::Ok) {
        entry.status = CaptureStatus::Error;
        entry.error_kind = payload.error_kind;
        spdlog::debug("capture {} failed: {} {}", job.camera.endpoint, payload.error_kind, payload.message);
    }
    manifest.append(encode_manifest_line(entry));
    return entry;
}

namespace {

using SteadyClock = std::chrono::steady_clock;

// Fixed pool of capture workers. Jobs go in through submit(); finished
// entries come back through the results queue, which only the scheduler reads.
class CapturePool {
public:
    CapturePool(const ArchiveConfig& config, Fetcher& fetcher, LineLog& manifest)
        : config_(config), fetcher_(fetcher), manifest_(manifest) {
        for (int i = 0; i < config.workers; ++i) threads_.emplace_back([this] { work(); });
    }

    ~CapturePool() { shutdown(); }

    void submit(ArchiveJob job) {
        {
            std::lock_guard lock(mu_);
            jobs_.push_back(std::move(job));
        }
        jobs_cv_.notify_one();
    }

    /// Waits until `deadline` or until a result is available.
    std::vector<ManifestEntry> wait_results(SteadyClock::time_point deadline, std::stop_token stop) {
        std::unique_lock lock(mu_);
        results_cv_.wait_until(lock, deadline, [&] { return !results_.empty() || stop.stop_requested(); });
        std::vector<ManifestEntry> out(std::make_move_iterator(results_.begin()),
                                       std::make_move_iterator(results_.end()));
        results_.clear();
        return out;
    }

    /// Discards queued jobs that have not started; returns them.
    std::vector<ArchiveJob> drop_pending() {
        std::lock_guard lock(mu_);
        std::vector<ArchiveJob> dropped(std::make_move_iterator(jobs_.begin()),
                                        std::make_move_iterator(jobs_.end()));
        jobs_.clear();
        return dropped;
    }

    void shutdown() {
        {
            std::lock_guard lock(mu_);
            closing_ = true;
        }
        jobs_cv_.notify_all();
        threads_.clear();
    }

private:
    void work() {
        for (;;) {
            ArchiveJob job;
            {
                std::unique_lock lock(mu_);
                jobs_cv_.wait(lock, [&] { return closing_ || !jobs_.empty(); });
                if (jobs_.empty()) return;
                job = std::move(jobs_.front());
                jobs_.pop_front();
            }
            ManifestEntry entry;
            try {
                entry = capture(job, config_, fetcher_, manifest_);
            } catch (const std::exception& e) {
                spdlog::error("manifest append failed for {}: {}", job.camera.camera_id, e.what());
                entry.camera_id = job.camera.camera_id;
                entry.cycle_index = job.cycle_index;
                entry.scheduled_for = job.scheduled_for;
                entry.status = CaptureStatus::Error;
                entry.error_kind = "storage";
            }
            {
                std::lock_guard lock(mu_);
                results_.push_back(std::move(entry));
            }
            results_cv_.notify_all();
        }
    }

    const ArchiveConfig& config_;
    Fetcher& fetcher_;
    LineLog& manifest_;
    std::mutex mu_;
    std::condition_variable jobs_cv_;
    std::condition_variable_any results_cv_;
    std::deque<ArchiveJob> jobs_;
    std::deque<ManifestEntry> results_;
    bool closing_ = false;
    std::vector<std::jthread> threads_;
};

}  // namespace

ArchiveReport run_archiver(const RegistryStore& registry, const ArchiveConfig& config, Fetcher& fetcher,
                           std::stop_token stop) {
    config.validate();
    ArchiveReport report;
    if (config.cycles && *config.cycles == 0) return report;

    std::error_code ec;
    fs::create_directories(config.output_root, ec);
    if (ec || !fs::is_directory(config.output_root))
        throw StorageError("output root " + config.output_root.string() + " is not a writable directory");
    const RecoveryReport recovered = recover_output_root(config.output_root);
    if (recovered.temp_files_removed || recovered.orphan_files_removed || recovered.torn_manifest_bytes)
        spdlog::warn("recovered output root: {} temp, {} orphan file(s), {} torn manifest byte(s)",
                     recovered.temp_files_removed, recovered.orphan_files_removed,
                     recovered.torn_manifest_bytes);
    LineLog manifest(config.output_root / kManifestFileName);

    const auto t0 = SteadyClock::now();
    const Timestamp t0_wall = utc_now();

    std::set<CameraId> busy;
    std::map<int, std::size_t> outstanding;  // cycle -> unfinished jobs
    std::map<int, SteadyClock::time_point> cycle_started;

    auto absorb = [&](std::vector<ManifestEntry> results) {
        for (auto& entry : results) {
            busy.erase(entry.camera_id);
            CycleStats& stats = report.cycles[static_cast<std::size_t>(entry.cycle_index)];
            if (entry.status == CaptureStatus::Ok) {
                ++stats.ok;
                ++report.ok;
            } else {
                ++stats.errors;
                ++report.errors;
            }
            if (--outstanding[entry.cycle_index] == 0)
                stats.wall_time = std::chrono::duration_cast<Millis>(SteadyClock::now() -
                                                                     cycle_started[entry.cycle_index]);
        }
    };

    std::size_t in_flight = 0;
    {
        CapturePool pool(config, fetcher, manifest);
        for (int k = 0; !config.cycles || k < *config.cycles; ++k) {
            const auto start = t0 + k * config.interval;
            while (SteadyClock::now() < start && !stop.stop_requested()) {
                auto results = pool.wait_results(start, stop);
                in_flight -= results.size();
                absorb(std::move(results));
            }
            if (stop.stop_requested()) break;
            auto ready = pool.wait_results(SteadyClock::now(), stop);
            in_flight -= ready.size();
            absorb(std::move(ready));

            const Timestamp scheduled_for =
                t0_wall + std::chrono::duration_cast<std::chrono::microseconds>(k * config.interval);
            auto jobs = plan_cycle(registry, k, scheduled_for);
            CycleStats stats;
            stats.cycle_index = k;
            stats.scheduled_for = scheduled_for;
            stats.jobs = jobs.size();
            report.cycles.push_back(stats);
            cycle_started[k] = SteadyClock::now();
            ++report.cycles_run;

            for (auto& job : jobs) {
                if (busy.contains(job.camera.camera_id)) {
                    ++report.cycles.back().skipped;
                    ++report.skipped;
                    continue;
                }
                busy.insert(job.camera.camera_id);
                ++outstanding[k];
                ++in_flight;
                pool.submit(std::move(job));
            }
            if (outstanding[k] == 0) report.cycles.back().wall_time = Millis{0};
            spdlog::info("cycle {}: {} job(s), {} skipped", k, report.cycles.back().jobs,
                         report.cycles.back().skipped);
        }

        if (stop.stop_requested()) {
            const auto dropped = pool.drop_pending();
            in_flight -= dropped.size();
            for (const auto& job : dropped) --outstanding[job.cycle_index];
        }
        while (in_flight > 0) {
            auto results = pool.wait_results(SteadyClock::time_point::max(), {});
            in_flight -= results.size();
            absorb(std::move(results));
        }
    }
    return report;
}

namespace {

bool is_temp_file(const fs::path& p) { return p.extension() == ".tmp"; }

std::string relative_string(const fs::path& root, const fs::path& p) {
    return fs::relative(p, root).generic_string();
}

bool is_camera_dir_name(const std::string& name) {
    return name.size() == 32 && name.find_first_not_of("0123456789abcdef") == std::string::npos;
}

// Every regular file below the camera-id directories. Anything else in the
// output root is left alone.
std::vector<fs::path> stored_files(const fs::path& root) {
    std::vector<fs::path> out;
    std::error_code ec;
    if (!fs::is_directory(root, ec)) return out;
    for (const auto& top : fs::directory_iterator(root, ec)) {
        if (!top.is_directory() || !is_camera_dir_name(top.path().filename().string())) continue;
        for (auto it = fs::recursive_directory_iterator(top.path(), ec); it != fs::recursive_directory_iterator();
             it.increment(ec)) {
            if (ec) break;
            if (it->is_regular_file()) out.push_back(it->path());
        }
    }
    return out;
}

}  // namespace

RecoveryReport recover_output_root(const fs::path& root) {
    RecoveryReport report;
    const fs::path manifest_path = root / kManifestFileName;
    report.torn_manifest_bytes = repair_tail(manifest_path);

    std::set<std::string> referenced;
    for (const auto& line : read_lines(manifest_path).lines) {
        try {
            const auto entry = decode_manifest_line(line);
            if (entry.status == CaptureStatus::Ok && entry.relative_path) referenced.insert(*entry.relative_path);
        } catch (const std::invalid_argument&) {
        }
    }
    for (const auto& file : stored_files(root)) {
        std::error_code ec;
        if (is_temp_file(file)) {
            if (fs::remove(file, ec)) ++report.temp_files_removed;
        } else if (!referenced.contains(relative_string(root, file))) {
            if (fs::remove(file, ec)) ++report.orphan_files_removed;
        }
    }
    return report;
}

Reconciliation reconcile_output_root(const fs::path& root) {
    Reconciliation rec;
    const auto contents = read_lines(root / kManifestFileName);
    if (!contents.torn_tail.empty()) rec.malformed_lines.push_back("torn tail: " + contents.torn_tail);

    std::set<std::string> referenced;
    for (const auto& line : contents.lines) {
        ManifestEntry entry;
        try {
            entry = decode_manifest_line(line);
        } catch (const std::invalid_argument& e) {
            rec.malformed_lines.push_back(e.what());
            continue;
        }
        if (entry.status != CaptureStatus::Ok) {
            ++rec.error_entries;
            continue;
        }
        ++rec.ok_entries;
        if (!entry.relative_path) {
            rec.missing_files.push_back("(Ok entry without path) " + entry.camera_id);
            continue;
        }
        referenced.insert(*entry.relative_path);
        const fs::path file = root / *entry.relative_path;
        std::ifstream in(file, std::ios::binary);
        if (!in) {
            rec.missing_files.push_back(*entry.relative_path);
            continue;
        }
        std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (bytes.size() != entry.bytes_written || sha256_hex(bytes) != entry.content_digest)
            rec.digest_mismatches.push_back(*entry.relative_path);
    }
    for (const auto& file : stored_files(root)) {
        const auto rel = relative_string(root, file);
        if (!referenced.contains(rel)) rec.orphan_files.push_back(rel);
    }
    return rec;
}

}  // namespace camscout
