#include "camscout/liveness.hpp"

#include "camscout/hls.hpp"
#include "camscout/mjpeg.hpp"

#include <thread>

namespace camscout {

void decode_samples(SampleSet& set) {
    for (auto& sample : set.samples)
        if (!sample.raster) sample.raster = try_decode_image(sample.body);
}

PairEvidence compare_pair(const Sample& earlier, const Sample& later, const LivenessPolicy& policy) {
    PairEvidence e;
    e.checksum_equal = checksum_compare(earlier.body, later.body);
    e.decoded = earlier.raster.has_value() && later.raster.has_value();

    if (!e.decoded) {
        // Checksum-only evidence: identical bytes are conclusive, differing
        // bytes are not.
        e.changed = false;
        e.determined = e.checksum_equal;
        return e;
    }
    const Raster& a = *earlier.raster;
    const Raster& b = *later.raster;
    if (!a.same_dimensions(b)) {
        e.dimensions_changed = true;
        e.changed = true;
        return e;
    }
    e.percent_changed = percent_diff(a, b, policy.channel_tolerance);
    e.luminance_delta = luminance_diff(a, b);

    const int votes = int(!e.checksum_equal) + int(*e.percent_changed > policy.percent_threshold) +
                      int(*e.luminance_delta > policy.luminance_threshold);
    e.changed = policy.pair_rule == PairRule::AnyComparator ? votes >= 1 : votes >= 2;
    return e;
}

LivenessVerdict classify(const SampleSet& set, const LivenessPolicy& policy) {
    LivenessVerdict verdict;
    verdict.policy_used = policy;
    verdict.samples = static_cast<int>(set.samples.size());
    verdict.label = LivenessLabel::Indeterminate;
    if (!set.failures.empty())
        verdict.note = std::to_string(set.failures.size()) + " sample(s) failed: " + set.failures.front();

    if (set.samples.size() < 2) {
        if (verdict.note.empty()) verdict.note = "fewer than 2 samples";
        return verdict;
    }

    std::size_t changed = 0, undetermined = 0;
    for (std::size_t i = 1; i < set.samples.size(); ++i) {
        PairEvidence e = compare_pair(set.samples[i - 1], set.samples[i], policy);
        if (!e.determined) ++undetermined;
        else if (e.changed) ++changed;
        verdict.evidence.push_back(std::move(e));
    }
    const double pairs = static_cast<double>(verdict.evidence.size());
    if (changed > 0 && static_cast<double>(changed) >= policy.set_fraction * pairs - 1e-12) {
        verdict.label = LivenessLabel::Live;
    } else if (changed == 0 && undetermined == 0) {
        verdict.label = LivenessLabel::Static;
    } else if (verdict.note.empty()) {
        verdict.note = undetermined > 0 ? "undecodable samples with differing bytes"
                                        : "too few changed pairs";
    }
    return verdict;
}

namespace {

template <typename Capture>
SampleSet sample_periodically(const CandidateLink& candidate, const LivenessPolicy& policy,
                              Capture&& capture) {
    SampleSet set;
    set.candidate = candidate;
    set.interval = policy.sample_interval;
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < policy.n_samples; ++i) {
        if (i > 0) std::this_thread::sleep_until(start + i * policy.sample_interval);
        capture(i, set);
    }
    decode_samples(set);
    return set;
}

}  // namespace

SampleSet sample_still(const CandidateLink& candidate, const LivenessPolicy& policy, Fetcher& fetcher,
                       const FetchOptions& options) {
    return sample_periodically(candidate, policy, [&](int i, SampleSet& set) {
        FetchResult r = fetcher.get(candidate.url, options);
        if (!r.ok()) {
            set.failures.push_back("sample " + std::to_string(i) + ": " + std::string(to_string(r.error)) +
                                   (r.message.empty() ? "" : " (" + r.message + ")"));
            return;
        }
        set.samples.push_back(Sample{r.started, std::move(r.body), std::nullopt});
    });
}

SampleSet sample_mjpeg(const CandidateLink& candidate, const LivenessPolicy& policy, Fetcher& fetcher,
                       const FetchOptions& options) {
    return sample_periodically(candidate, policy, [&](int i, SampleSet& set) {
        const Timestamp at = utc_now();
        FrameResult frame = sample_mjpeg_frame(candidate.url, fetcher, options);
        if (!frame.ok()) {
            set.failures.push_back("sample " + std::to_string(i) + ": " + frame.error_kind() +
                                   (frame.message.empty() ? "" : " (" + frame.message + ")"));
            return;
        }
        set.samples.push_back(Sample{at, std::move(*frame.frame), std::nullopt});
    });
}

LivenessVerdict identify_candidate(const CandidateLink& candidate, const LivenessPolicy& policy,
                                   Fetcher& fetcher, const FetchOptions& options) {
    policy.validate();
    switch (candidate.media_kind) {
        case MediaKind::StillImage:
            return classify(sample_still(candidate, policy, fetcher, options), policy);
        case MediaKind::MjpegStream:
            return classify(sample_mjpeg(candidate, policy, fetcher, options), policy);
        case MediaKind::HlsStream: {
            LivenessVerdict v = check_hls_live(candidate.url, policy.sample_interval, fetcher, options);
            v.policy_used = policy;
            return v;
        }
        case MediaKind::RtspLink:
        case MediaKind::RtmpLink:
            break;
    }
    LivenessVerdict v;
    v.label = LivenessLabel::Indeterminate;
    v.policy_used = policy;
    v.note = "streaming protocol not sampled";
    return v;
}

}  // namespace camscout
