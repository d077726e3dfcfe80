#pragma once

#include "camscout/crawler.hpp"
#include "camscout/http.hpp"
#include "camscout/raster.hpp"
#include "camscout/time.hpp"
#include "camscout/verdict.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace camscout {

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Comparators. All are pure and thread-safe.

/// True iff the two bodies have the same SHA-256 digest.
bool checksum_compare(std::string_view a, std::string_view b);

/// Fraction of pixels where some channel differs by more than
/// `channel_tolerance`. Throws DimensionMismatch.
double percent_diff(const Raster& a, const Raster& b, int channel_tolerance);

/// Mean Rec. 601 luma, 0.299 R + 0.587 G + 0.114 B, in [0, 255].
double mean_luminance(const Raster& raster);

/// |mean_luminance(a) - mean_luminance(b)|. Throws DimensionMismatch.
double luminance_diff(const Raster& a, const Raster& b);

struct Sample {
    Timestamp captured_at{};
    std::string body;
    std::optional<Raster> raster;
};

struct SampleSet {
    CandidateLink candidate;
    std::vector<Sample> samples;
    Millis interval{20'000};
    /// One entry per failed capture attempt.
    std::vector<std::string> failures;
};

/// Attaches decoded rasters to every sample that lacks one, where possible.
void decode_samples(SampleSet& set);

/// Compares one adjacent pair under `policy`.
PairEvidence compare_pair(const Sample& earlier, const Sample& later, const LivenessPolicy& policy);

/// Deterministic: no clock reads, `decided_at` is left empty.
LivenessVerdict classify(const SampleSet& samples, const LivenessPolicy& policy);

/// n_samples GETs of a still-image URL spaced by sample_interval.
SampleSet sample_still(const CandidateLink& candidate, const LivenessPolicy& policy, Fetcher& fetcher,
                       const FetchOptions& options);

/// n_samples single-frame grabs from an MJPEG stream spaced by sample_interval.
SampleSet sample_mjpeg(const CandidateLink& candidate, const LivenessPolicy& policy, Fetcher& fetcher,
                       const FetchOptions& options);

/// Samples and classifies one candidate according to its media kind. RTSP
/// and RTMP links are not sampled and come back Indeterminate.
LivenessVerdict identify_candidate(const CandidateLink& candidate, const LivenessPolicy& policy,
                                   Fetcher& fetcher, const FetchOptions& options);

}  // namespace camscout
