#pragma once

#include "camscout/time.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace camscout {

enum class LivenessLabel { Live, Static, Indeterminate };

std::string_view to_string(LivenessLabel label);
std::optional<LivenessLabel> parse_liveness_label(std::string_view name);

/// How the three per-pair signals combine into one "changed" bit.
enum class PairRule { AnyComparator, Majority };

std::string_view to_string(PairRule rule);
std::optional<PairRule> parse_pair_rule(std::string_view name);

struct LivenessPolicy {
    int n_samples = 3;
    Millis sample_interval{20'000};
    /// A pixel changed iff some channel moved by more than this.
    int channel_tolerance = 10;
    double percent_threshold = 0.01;
    double luminance_threshold = 1.0;
    PairRule pair_rule = PairRule::Majority;
    /// Fraction of adjacent pairs that must change for Live; 1.0 means all of them.
    double set_fraction = 1.0;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;

    bool operator==(const LivenessPolicy&) const = default;
};

/// Comparator results for one adjacent sample pair. The raster-based fields
/// are absent when either body failed to decode or the dimensions differ.
struct PairEvidence {
    bool checksum_equal = false;
    bool decoded = false;
    bool dimensions_changed = false;
    std::optional<double> percent_changed;
    std::optional<double> luminance_delta;
    /// Only meaningful when `determined` is true.
    bool changed = false;
    /// False when the evidence was checksum-only and the bytes differed.
    bool determined = true;

    bool operator==(const PairEvidence&) const = default;
};

/// Playlist-advance evidence for HLS candidates.
struct PlaylistEvidence {
    std::string media_playlist;
    std::optional<std::int64_t> first_sequence;
    std::optional<std::int64_t> second_sequence;
    bool segments_changed = false;

    bool operator==(const PlaylistEvidence&) const = default;
};

struct LivenessVerdict {
    LivenessLabel label = LivenessLabel::Indeterminate;
    std::vector<PairEvidence> evidence;
    std::optional<LivenessPolicy> policy_used;
    std::optional<PlaylistEvidence> playlist;
    /// Number of samples the verdict was computed from.
    int samples = 0;
    /// Free-form reason for Indeterminate outcomes (fetch errors, parse failures).
    std::string note;
    std::optional<Timestamp> decided_at;

    bool operator==(const LivenessVerdict&) const = default;
};

/// Canonical JSON text of a verdict. Equal verdicts serialize byte-identically.
std::string serialize_verdict(const LivenessVerdict& verdict);
/// Throws std::invalid_argument on malformed input.
LivenessVerdict deserialize_verdict(std::string_view json);

}  // namespace camscout
