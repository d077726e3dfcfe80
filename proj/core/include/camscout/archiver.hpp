#pragma once

#include "camscout/http.hpp"
#include "camscout/jsonl.hpp"
#include "camscout/registry.hpp"
#include "camscout/time.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

namespace camscout {

struct ArchiveConfig {
    Millis interval{600'000};
    int workers = 4;
    Millis per_camera_timeout{10'000};
    int retries = 1;
    Millis retry_backoff{250};
    std::filesystem::path output_root;
    /// nullopt runs until stopped.
    std::optional<int> cycles;
    std::string user_agent = "camscout/0.1";

    /// Throws std::invalid_argument.
    void validate() const;
};

struct ArchiveJob {
    CameraRecord camera;
    int cycle_index = 0;
    Timestamp scheduled_for{};
};

enum class CaptureStatus { Ok, Error };

struct ManifestEntry {
    CameraId camera_id;
    int cycle_index = 0;
    Timestamp scheduled_for{};
    Timestamp captured_at{};
    CaptureStatus status = CaptureStatus::Error;
    std::optional<std::string> error_kind;
    /// Relative to the output root, '/'-separated.
    std::optional<std::string> relative_path;
    std::uint64_t bytes_written = 0;
    /// SHA-256 hex of the stored bytes; empty for errors.
    std::string content_digest;
    int attempts = 0;

    bool operator==(const ManifestEntry&) const = default;
};

std::string encode_manifest_line(const ManifestEntry& entry);
/// Throws std::invalid_argument on malformed input.
ManifestEntry decode_manifest_line(std::string_view line);

inline constexpr const char* kManifestFileName = "manifest.jsonl";

/// `<camera_id>/<YYYY>/<MM>/<DD>/<HHMMSS>.<ext>` in UTC.
std::string storage_path(const CameraId& camera_id, Timestamp captured_at, std::string_view extension);

/// storage_path, with "_1", "_2", ... appended to the stem while the file
/// already exists under `root`.
std::string unique_storage_path(const std::filesystem::path& root, const CameraId& camera_id,
                                Timestamp captured_at, std::string_view extension);

/// One job per enabled camera of a capturable kind, all sharing `scheduled_for`.
std::vector<ArchiveJob> plan_cycle(const RegistryStore& registry, int cycle_index, Timestamp scheduled_for);

/// Captures one snapshot, stores it atomically and appends its manifest
/// entry. Never throws for capture failures; those become Error entries.
ManifestEntry capture(const ArchiveJob& job, const ArchiveConfig& config, Fetcher& fetcher, LineLog& manifest);

struct CycleStats {
    int cycle_index = 0;
    Timestamp scheduled_for{};
    std::size_t jobs = 0;
    std::size_t ok = 0;
    std::size_t errors = 0;
    /// Cameras whose previous capture was still running at this cycle's start.
    std::size_t skipped = 0;
    Millis wall_time{0};
};

struct ArchiveReport {
    int cycles_run = 0;
    std::size_t ok = 0;
    std::size_t errors = 0;
    std::size_t skipped = 0;
    std::vector<CycleStats> cycles;
};

/// Runs `config.cycles` capture cycles (or until `stop` is requested), cycle k
/// starting at t0 + k * interval, with at most `workers` concurrent
/// captures. Throws StorageError if the output root is unusable.
ArchiveReport run_archiver(const RegistryStore& registry, const ArchiveConfig& config, Fetcher& fetcher,
                           std::stop_token stop = {});

struct RecoveryReport {
    std::size_t torn_manifest_bytes = 0;
    std::size_t temp_files_removed = 0;
    std::size_t orphan_files_removed = 0;
};

/// Brings an output root left behind by an interrupted run back to a
/// reconcilable state: drops a torn manifest tail, temp files and image files
/// no Ok entry refers to.
RecoveryReport recover_output_root(const std::filesystem::path& root);

struct Reconciliation {
    std::size_t ok_entries = 0;
    std::size_t error_entries = 0;
    std::vector<std::string> missing_files;
    std::vector<std::string> digest_mismatches;
    std::vector<std::string> orphan_files;
    std::vector<std::string> malformed_lines;

    bool clean() const {
        return missing_files.empty() && digest_mismatches.empty() && orphan_files.empty() &&
               malformed_lines.empty();
    }
};

/// Checks every Ok entry's file exists with a matching digest and that no
/// stored file lacks an Ok entry.
Reconciliation reconcile_output_root(const std::filesystem::path& root);

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest_path);

}  // namespace camscout
