#include "camscout/verdict.hpp"

#include "json_codec.hpp"

namespace camscout {

std::string_view to_string(LivenessLabel label) {
    switch (label) {
        case LivenessLabel::Live: return "Live";
        case LivenessLabel::Static: return "Static";
        case LivenessLabel::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

std::optional<LivenessLabel> parse_liveness_label(std::string_view name) {
    if (name == "Live") return LivenessLabel::Live;
    if (name == "Static") return LivenessLabel::Static;
    if (name == "Indeterminate") return LivenessLabel::Indeterminate;
    return std::nullopt;
}

std::string_view to_string(PairRule rule) {
    return rule == PairRule::AnyComparator ? "AnyComparator" : "Majority";
}

std::optional<PairRule> parse_pair_rule(std::string_view name) {
    if (name == "AnyComparator" || name == "any") return PairRule::AnyComparator;
    if (name == "Majority" || name == "majority") return PairRule::Majority;
    return std::nullopt;
}

void LivenessPolicy::validate() const {
    if (n_samples < 2) throw std::invalid_argument("n_samples must be >= 2");
    if (sample_interval <= Millis{0}) throw std::invalid_argument("sample_interval must be > 0");
    if (channel_tolerance < 0 || channel_tolerance > 255)
        throw std::invalid_argument("channel_tolerance must be in [0, 255]");
    if (!(percent_threshold >= 0.0 && percent_threshold <= 1.0))
        throw std::invalid_argument("percent_threshold must be in [0, 1]");
    if (!(luminance_threshold >= 0.0 && luminance_threshold <= 255.0))
        throw std::invalid_argument("luminance_threshold must be in [0, 255]");
    if (!(set_fraction > 0.0 && set_fraction <= 1.0))
        throw std::invalid_argument("set_fraction must be in (0, 1]");
}

void to_json(json& j, const LivenessPolicy& p) {
    j = json{{"n_samples", p.n_samples},
             {"sample_interval_ms", p.sample_interval.count()},
             {"channel_tolerance", p.channel_tolerance},
             {"percent_threshold", p.percent_threshold},
             {"luminance_threshold", p.luminance_threshold},
             {"pair_rule", to_string(p.pair_rule)},
             {"set_fraction", p.set_fraction}};
}

void from_json(const json& j, LivenessPolicy& p) {
    p.n_samples = j.at("n_samples").get<int>();
    p.sample_interval = Millis{j.at("sample_interval_ms").get<long long>()};
    p.channel_tolerance = j.at("channel_tolerance").get<int>();
    p.percent_threshold = j.at("percent_threshold").get<double>();
    p.luminance_threshold = j.at("luminance_threshold").get<double>();
    auto rule = parse_pair_rule(j.at("pair_rule").get<std::string>());
    if (!rule) throw std::invalid_argument("unknown pair_rule");
    p.pair_rule = *rule;
    p.set_fraction = j.at("set_fraction").get<double>();
}

void to_json(json& j, const PairEvidence& e) {
    j = json{{"checksum_equal", e.checksum_equal},
             {"decoded", e.decoded},
             {"dimensions_changed", e.dimensions_changed},
             {"changed", e.changed},
             {"determined", e.determined}};
    put_optional(j, "percent_changed", e.percent_changed);
    put_optional(j, "luminance_delta", e.luminance_delta);
}

void from_json(const json& j, PairEvidence& e) {
    e.checksum_equal = j.at("checksum_equal").get<bool>();
    e.decoded = j.at("decoded").get<bool>();
    e.dimensions_changed = j.at("dimensions_changed").get<bool>();
    e.changed = j.at("changed").get<bool>();
    e.determined = j.at("determined").get<bool>();
    e.percent_changed = get_optional<double>(j, "percent_changed");
    e.luminance_delta = get_optional<double>(j, "luminance_delta");
}

void to_json(json& j, const PlaylistEvidence& e) {
    j = json{{"media_playlist", e.media_playlist}, {"segments_changed", e.segments_changed}};
    put_optional(j, "first_sequence", e.first_sequence);
    put_optional(j, "second_sequence", e.second_sequence);
}

void from_json(const json& j, PlaylistEvidence& e) {
    e.media_playlist = j.at("media_playlist").get<std::string>();
    e.segments_changed = j.at("segments_changed").get<bool>();
    e.first_sequence = get_optional<std::int64_t>(j, "first_sequence");
    e.second_sequence = get_optional<std::int64_t>(j, "second_sequence");
}

void to_json(json& j, const LivenessVerdict& v) {
    j = json{{"label", to_string(v.label)},
             {"evidence", v.evidence},
             {"samples", v.samples},
             {"note", v.note}};
    put_optional(j, "policy", v.policy_used);
    put_optional(j, "playlist", v.playlist);
    j["decided_at"] = v.decided_at ? json(format_rfc3339(*v.decided_at)) : json(nullptr);
}

Timestamp timestamp_from_json(const json& j) {
    auto t = parse_rfc3339(j.get<std::string>());
    if (!t) throw std::invalid_argument("bad timestamp " + j.get<std::string>());
    return *t;
}

void from_json(const json& j, LivenessVerdict& v) {
    auto label = parse_liveness_label(j.at("label").get<std::string>());
    if (!label) throw std::invalid_argument("unknown verdict label");
    v.label = *label;
    v.evidence = j.value("evidence", std::vector<PairEvidence>{});
    v.samples = j.value("samples", 0);
    v.note = j.value("note", std::string{});
    v.policy_used = get_optional<LivenessPolicy>(j, "policy");
    v.playlist = get_optional<PlaylistEvidence>(j, "playlist");
    v.decided_at.reset();
    if (auto it = j.find("decided_at"); it != j.end() && !it->is_null())
        v.decided_at = timestamp_from_json(*it);
}

std::string serialize_verdict(const LivenessVerdict& verdict) { return json(verdict).dump(); }

LivenessVerdict deserialize_verdict(std::string_view text) {
    try {
        return json::parse(text).get<LivenessVerdict>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed verdict: ") + e.what());
    }
}

}  // namespace camscout
