#pragma once

// nlohmann/json bindings shared by the registry, archiver and fleet codecs.

#include "camscout/verdict.hpp"

#include <json.hpp>

namespace camscout {

using json = nlohmann::json;

void to_json(json& j, const LivenessPolicy& p);
void from_json(const json& j, LivenessPolicy& p);
void to_json(json& j, const PairEvidence& e);
void from_json(const json& j, PairEvidence& e);
void to_json(json& j, const PlaylistEvidence& e);
void from_json(const json& j, PlaylistEvidence& e);
void to_json(json& j, const LivenessVerdict& v);
void from_json(const json& j, LivenessVerdict& v);

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& value) {
    j[key] = value ? json(*value) : json(nullptr);
}

template <typename T>
std::optional<T> get_optional(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return it->template get<T>();
}

Timestamp timestamp_from_json(const json& j);

}  // namespace camscout
