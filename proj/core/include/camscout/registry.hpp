#pragma once

#include "camscout/jsonl.hpp"
#include "camscout/media.hpp"
#include "camscout/time.hpp"
#include "camscout/verdict.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace camscout {

/// 32 lowercase hex characters: the first 128 bits of SHA-256 over the
/// normalized endpoint.
using CameraId = std::string;

CameraId derive_camera_id(std::string_view endpoint);

struct CameraRecord {
    CameraId camera_id;
    std::string endpoint;
    MediaKind media_kind = MediaKind::StillImage;
    Timestamp discovered_at{};
    std::string source_page;
    LivenessVerdict verdict;
    bool enabled = false;

    bool operator==(const CameraRecord&) const = default;
};

class InvalidRecord : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Normalizes the endpoint, fills camera_id and checks the record
/// invariants. Throws InvalidRecord.
CameraRecord canonicalize(CameraRecord record);

enum class RegistryEvent { Upsert, Disable };

std::string encode_registry_line(RegistryEvent event, const CameraRecord& record);
/// Throws InvalidRecord on malformed lines.
std::pair<RegistryEvent, CameraRecord> decode_registry_line(std::string_view line);

using CompactedView = std::map<CameraId, CameraRecord>;

/// Folds an event sequence into the latest state per camera_id.
CompactedView replay(const std::vector<std::string>& lines);

struct CameraFilter {
    /// Empty means every kind.
    std::set<MediaKind> kinds;
    bool enabled_only = false;
};

/// Append-only record log plus its compacted in-memory view. One writer at a
/// time, any number of concurrent readers.
class RegistryStore {
public:
    /// In-memory store with no backing file.
    RegistryStore();
    /// Loads and compacts `path` (creating it if missing). A record torn by a
    /// crash at the end of the file is dropped. Throws StorageError when the
    /// file cannot be read or a complete line fails to parse.
    explicit RegistryStore(std::filesystem::path path);

    /// Inserts or replaces the record for its endpoint (last writer wins).
    CameraId upsert(CameraRecord record);
    /// Clears `enabled`. Returns false if the id is unknown.
    bool disable(const CameraId& id);

    std::vector<CameraRecord> list(const CameraFilter& filter = {}) const;
    std::optional<CameraRecord> get(const CameraId& id) const;
    bool contains_endpoint(std::string_view endpoint) const;
    std::size_t size() const;
    CompactedView snapshot() const;

    /// Lines skipped during load because they were torn.
    std::size_t torn_bytes_dropped() const { return torn_bytes_; }
    const std::optional<std::filesystem::path>& path() const { return path_; }

private:
    void write_event(RegistryEvent event, const CameraRecord& record);

    std::optional<std::filesystem::path> path_;
    std::unique_ptr<LineLog> log_;
    CompactedView view_;
    std::size_t torn_bytes_ = 0;
    mutable std::shared_mutex mu_;
};

}  // namespace camscout
