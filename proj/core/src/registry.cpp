#include "camscout/registry.hpp"

#include "camscout/digest.hpp"
#include "camscout/url.hpp"
#include "json_codec.hpp"

#include <mutex>

namespace camscout {

CameraId derive_camera_id(std::string_view endpoint) {
    std::string normalized;
    try {
        normalized = normalize_url(endpoint);
    } catch (const UrlError&) {
        normalized = std::string(endpoint);
    }
    return sha256_hex(normalized).substr(0, 32);
}

CameraRecord canonicalize(CameraRecord record) {
    Url url;
    try {
        record.endpoint = normalize_url(record.endpoint);
        url = parse_url_reference(record.endpoint);
    } catch (const UrlError& e) {
        throw InvalidRecord("bad endpoint '" + record.endpoint + "': " + e.what());
    }
    if (url.scheme != "http" && url.scheme != "https" && url.scheme != "rtsp" &&
        url.scheme != "rtmp")
        throw InvalidRecord("unsupported endpoint scheme " + url.scheme);

    if (auto scheme = required_scheme(record.media_kind)) {
        if (url.scheme != *scheme)
            throw InvalidRecord(std::string(to_string(record.media_kind)) + " needs an " +
                                std::string(*scheme) + ":// endpoint");
    } else if (url.scheme != "http" && url.scheme != "https") {
        throw InvalidRecord(std::string(to_string(record.media_kind)) + " needs an http(s) endpoint");
    }
    if (!is_capturable(record.media_kind) && record.enabled)
        throw InvalidRecord("RTSP/RTMP records cannot be enabled");

    const CameraId id = derive_camera_id(record.endpoint);
    if (!record.camera_id.empty() && record.camera_id != id)
        throw InvalidRecord("camera_id does not match endpoint");
    record.camera_id = id;
    return record;
}

std::string encode_registry_line(RegistryEvent event, const CameraRecord& r) {
    json j{{"event", event == RegistryEvent::Upsert ? "upsert" : "disable"},
           {"camera_id", r.camera_id},
           {"endpoint", r.endpoint},
           {"media_kind", to_string(r.media_kind)},
           {"discovered_at", format_rfc3339(r.discovered_at)},
           {"source_page", r.source_page},
           {"verdict", r.verdict},
           {"enabled", r.enabled}};
    return j.dump();
}

std::pair<RegistryEvent, CameraRecord> decode_registry_line(std::string_view line) {
    try {
        const json j = json::parse(line);
        const auto event_name = j.at("event").get<std::string>();
        RegistryEvent event;
        if (event_name == "upsert")
            event = RegistryEvent::Upsert;
        else if (event_name == "disable")
            event = RegistryEvent::Disable;
        else
            throw InvalidRecord("unknown event '" + event_name + "'");

        CameraRecord r;
        r.camera_id = j.at("camera_id").get<std::string>();
        r.endpoint = j.at("endpoint").get<std::string>();
        auto kind = parse_media_kind(j.at("media_kind").get<std::string>());
        if (!kind) throw InvalidRecord("unknown media_kind");
        r.media_kind = *kind;
        r.discovered_at = timestamp_from_json(j.at("discovered_at"));
        r.source_page = j.at("source_page").get<std::string>();
        r.verdict = j.at("verdict").get<LivenessVerdict>();
        r.enabled = j.at("enabled").get<bool>();
        return {event, r};
    } catch (const json::exception& e) {
        throw InvalidRecord(std::string("malformed registry line: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw InvalidRecord(std::string("malformed registry line: ") + e.what());
    }
}

namespace {

void apply(CompactedView& view, RegistryEvent event, CameraRecord record) {
    if (event == RegistryEvent::Disable) record.enabled = false;
    view.insert_or_assign(record.camera_id, std::move(record));
}

}  // namespace

CompactedView replay(const std::vector<std::string>& lines) {
    CompactedView view;
    for (const auto& line : lines) {
        auto [event, record] = decode_registry_line(line);
        apply(view, event, std::move(record));
    }
    return view;
}

RegistryStore::RegistryStore() = default;

RegistryStore::RegistryStore(std::filesystem::path path) : path_(path) {
    torn_bytes_ = repair_tail(path);
    const auto contents = read_lines(path);
    for (std::size_t i = 0; i < contents.lines.size(); ++i) {
        try {
            auto [event, record] = decode_registry_line(contents.lines[i]);
            apply(view_, event, std::move(record));
        } catch (const InvalidRecord& e) {
            throw StorageError(path.string() + ":" + std::to_string(i + 1) + ": " + e.what());
        }
    }
    log_ = std::make_unique<LineLog>(std::move(path));
}

void RegistryStore::write_event(RegistryEvent event, const CameraRecord& record) {
    if (log_) log_->append(encode_registry_line(event, record));
}

CameraId RegistryStore::upsert(CameraRecord record) {
    record = canonicalize(std::move(record));
    std::unique_lock lock(mu_);
    write_event(RegistryEvent::Upsert, record);
    const auto id = record.camera_id;
    apply(view_, RegistryEvent::Upsert, std::move(record));
    return id;
}

bool RegistryStore::disable(const CameraId& id) {
    std::unique_lock lock(mu_);
    auto it = view_.find(id);
    if (it == view_.end()) return false;
    CameraRecord record = it->second;
    record.enabled = false;
    write_event(RegistryEvent::Disable, record);
    it->second = std::move(record);
    return true;
}

std::vector<CameraRecord> RegistryStore::list(const CameraFilter& filter) const {
    std::shared_lock lock(mu_);
    std::vector<CameraRecord> out;
    for (const auto& [id, record] : view_) {
        if (!filter.kinds.empty() && !filter.kinds.contains(record.media_kind)) continue;
        if (filter.enabled_only && !record.enabled) continue;
        out.push_back(record);
    }
    return out;
}

std::optional<CameraRecord> RegistryStore::get(const CameraId& id) const {
    std::shared_lock lock(mu_);
    auto it = view_.find(id);
    if (it == view_.end()) return std::nullopt;
    return it->second;
}

bool RegistryStore::contains_endpoint(std::string_view endpoint) const {
    return get(derive_camera_id(endpoint)).has_value();
}

std::size_t RegistryStore::size() const {
    std::shared_lock lock(mu_);
    return view_.size();
}

CompactedView RegistryStore::snapshot() const {
    std::shared_lock lock(mu_);
    return view_;
}

}  // namespace camscout
