#pragma once

#include "camscout/media.hpp"
#include "camscout/registry.hpp"
#include "camscout/verdict.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace camscout::cli {

struct GlobalOptions {
    std::string config;
    std::string log_level = "info";
    std::string user_agent = "camscout/0.1";
    double request_timeout_secs = 10;
};

struct DiscoverOptions {
    std::string seeds;
    int depth = 1;
    int max_pages = 100;
    int delay_ms = 250;
    bool same_host = false;
    std::string out = "registry.jsonl";
    /// Empty means "<out>.crawl.jsonl".
    std::string report;
    int fanout = 4;
    bool ignore_robots = false;
};

struct IdentifyOptions {
    std::string registry = "registry.jsonl";
    int samples = 3;
    double interval_secs = 20;
    double percent_threshold = 0.01;
    double luma_threshold = 1.0;
    int channel_tol = 10;
    std::string rule = "majority";
    int jobs = 32;
};

struct ArchiveOptions {
    std::string registry = "registry.jsonl";
    std::string out = "archive";
    double interval_secs = 600;
    int workers = 4;
    /// Negative runs until interrupted.
    int cycles = -1;
    double timeout_secs = 10;
    int retries = 1;
};

struct FleetOptions {
    int static_images = 0;
    int rotating = 0;
    int mjpeg = 0;
    int hls = 0;
    int decoys = 0;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::uint64_t seed = 1;
    int delay_ms = 0;
    double error_rate = 0;
};

struct StatsOptions {
    std::string registry = "registry.jsonl";
    std::string archive = "archive";
};

struct Invocation {
    std::string command;
    GlobalOptions global;
    DiscoverOptions discover;
    IdentifyOptions identify;
    ArchiveOptions archive;
    FleetOptions fleet;
    StatsOptions stats;
};

/// Bad flags or missing required values. `usage` holds the help text.
class UsageError : public std::runtime_error {
public:
    UsageError(const std::string& message, std::string usage)
        : std::runtime_error(message), usage(std::move(usage)) {}
    std::string usage;
};

/// Malformed config file; the message carries "<file>:<line>:".
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ConfigEntry {
    /// Optional "<command>." scope stripped off; '_' folded to '-'.
    std::string scope;
    std::string key;
    std::string value;
    int line = 0;
};

/// Flat "key = value" file; '#' and ';' start comments. Keys may be scoped
/// as "archive.out". Throws ConfigError.
std::vector<ConfigEntry> parse_config_file(const std::filesystem::path& path);

/// Parses argv (without the program name). Precedence is flag, then config
/// file (scoped keys before unscoped), then default.
/// Throws UsageError or ConfigError.
Invocation parse_invocation(const std::vector<std::string>& args);

struct CameraStats {
    CameraId camera_id;
    std::string endpoint;
    std::optional<MediaKind> media_kind;
    std::optional<LivenessLabel> label;
    bool enabled = false;
    std::size_t ok = 0;
    std::size_t errors = 0;
    std::uint64_t bytes = 0;

    std::optional<double> success_rate() const {
        const std::size_t n = ok + errors;
        if (n == 0) return std::nullopt;
        return static_cast<double>(ok) / static_cast<double>(n);
    }
};

struct StatsReport {
    /// One line per unreadable input.
    std::vector<std::string> problems;
    std::size_t cameras = 0;
    std::map<std::string, std::size_t> by_kind;
    std::map<std::string, std::size_t> by_verdict;
    std::vector<CameraStats> per_camera;
    std::size_t captures_ok = 0;
    std::size_t captures_error = 0;
    std::uint64_t total_bytes = 0;
    /// Mean bytes per cycle times cycles per week, from the scheduled_for spacing.
    std::optional<double> bytes_per_week;
};

StatsReport compute_stats(const std::filesystem::path& registry, const std::filesystem::path& manifest);
std::string format_stats(const StatsReport& report);

/// Runs one subcommand. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace camscout::cli
