#include "camscout/liveness.hpp"

#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace camscout;
using camscout::test::ScriptedFetcher;
using camscout::test::solid_jpeg;

namespace {

Timestamp at(int s) { return Timestamp{} + std::chrono::seconds(1'600'000'000 + s); }

SampleSet set_of(const std::vector<std::string>& bodies) {
    SampleSet set;
    set.candidate = CandidateLink{"http://a.example/c.jpg", MediaKind::StillImage, "http://a.example/", 0};
    for (std::size_t i = 0; i < bodies.size(); ++i)
        set.samples.push_back(Sample{at(static_cast<int>(i) * 20), bodies[i], std::nullopt});
    decode_samples(set);
    return set;
}

LivenessPolicy fast_policy(int n = 3) {
    LivenessPolicy p;
    p.n_samples = n;
    p.sample_interval = Millis{1};
    return p;
}

}  // namespace

TEST_CASE("byte-identical samples are Static") {
    const std::string frame = solid_jpeg({10, 200, 30});
    const auto v = classify(set_of({frame, frame, frame}), LivenessPolicy{});
    CHECK(v.label == LivenessLabel::Static);
    CHECK(v.evidence.size() == 2);
    for (const auto& e : v.evidence) {
        CHECK(e.checksum_equal);
        CHECK(e.determined);
        CHECK_FALSE(e.changed);
    }
}

TEST_CASE("samples changing beyond every threshold are Live") {
    const auto v = classify(set_of({solid_jpeg({0, 0, 0}), solid_jpeg({255, 255, 255}), solid_jpeg({0, 0, 0})}),
                            LivenessPolicy{});
    CHECK(v.label == LivenessLabel::Live);
    REQUIRE(v.evidence.size() == 2);
    for (const auto& e : v.evidence) {
        CHECK_FALSE(e.checksum_equal);
        REQUIRE(e.percent_changed);
        CHECK(*e.percent_changed > 0.99);
        REQUIRE(e.luminance_delta);
        CHECK(*e.luminance_delta > 250.0);
    }
    REQUIRE(v.policy_used);
    CHECK(*v.policy_used == LivenessPolicy{});
    CHECK(v.samples == 3);
    CHECK_FALSE(v.decided_at);
}

TEST_CASE("fewer than two samples is Indeterminate") {
    CHECK(classify(set_of({solid_jpeg({1, 2, 3})}), LivenessPolicy{}).label == LivenessLabel::Indeterminate);
    CHECK(classify(set_of({}), LivenessPolicy{}).label == LivenessLabel::Indeterminate);
}

TEST_CASE("re-encoding noise alone does not make a pair changed under Majority") {
    // Different bytes, same picture: only the checksum signal fires.
    const Raster scene(32, 24, Rgb{90, 120, 150});
    const std::string q90 = encode_jpeg(scene, 90), q85 = encode_jpeg(scene, 85);
    REQUIRE(q90 != q85);
    const auto majority = classify(set_of({q90, q85, q90}), LivenessPolicy{});
    CHECK(majority.label == LivenessLabel::Static);

    LivenessPolicy any;
    any.pair_rule = PairRule::AnyComparator;
    CHECK(classify(set_of({q90, q85, q90}), any).label == LivenessLabel::Live);
}

TEST_CASE("set fraction decides how many changed pairs make Live") {
    const std::string a = solid_jpeg({0, 0, 0}), b = solid_jpeg({255, 255, 255});
    const auto mixed = set_of({a, a, b});
    CHECK(classify(mixed, LivenessPolicy{}).label == LivenessLabel::Indeterminate);
    LivenessPolicy half;
    half.set_fraction = 0.5;
    CHECK(classify(mixed, half).label == LivenessLabel::Live);
}

TEST_CASE("undecodable bodies fall back to checksum evidence") {
    const auto same = classify(set_of({"blob", "blob", "blob"}), LivenessPolicy{});
    CHECK(same.label == LivenessLabel::Static);
    const auto differ = classify(set_of({"blob1", "blob2", "blob3"}), LivenessPolicy{});
    CHECK(differ.label == LivenessLabel::Indeterminate);
    for (const auto& e : differ.evidence) {
        CHECK_FALSE(e.decoded);
        CHECK_FALSE(e.determined);
        CHECK_FALSE(e.percent_changed);
    }
}

TEST_CASE("a resolution change counts as changed") {
    const auto v = classify(set_of({solid_jpeg({5, 5, 5}, 32, 24), solid_jpeg({5, 5, 5}, 64, 48),
                                    solid_jpeg({5, 5, 5}, 32, 24)}),
                            LivenessPolicy{});
    CHECK(v.label == LivenessLabel::Live);
    CHECK(v.evidence[0].dimensions_changed);
}

TEST_CASE("identical samples are never Live under any policy") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> n(2, 6), tol(0, 255), coin(0, 1);
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    const std::string frame = solid_jpeg({40, 80, 120});
    for (int i = 0; i < 200; ++i) {
        LivenessPolicy p;
        p.n_samples = n(rng);
        p.channel_tolerance = tol(rng);
        p.percent_threshold = frac(rng);
        p.luminance_threshold = frac(rng) * 255;
        p.pair_rule = coin(rng) ? PairRule::Majority : PairRule::AnyComparator;
        p.set_fraction = std::max(0.01, frac(rng));
        const auto v = classify(set_of(std::vector<std::string>(static_cast<std::size_t>(p.n_samples), frame)), p);
        CHECK(v.label == LivenessLabel::Static);
    }
}

TEST_CASE("classification is deterministic down to the serialized evidence") {
    std::mt19937_64 rng(8);
    std::vector<std::string> bodies;
    for (int i = 0; i < 4; ++i) bodies.push_back(encode_jpeg(camscout::test::random_raster(rng, 16, 16), 80));
    const auto set = set_of(bodies);
    const std::string first = serialize_verdict(classify(set, LivenessPolicy{}));
    for (int i = 0; i < 20; ++i) CHECK(serialize_verdict(classify(set, LivenessPolicy{})) == first);
}

TEST_CASE("verdicts survive serialization") {
    auto v = classify(set_of({solid_jpeg({0, 0, 0}), solid_jpeg({255, 0, 0})}), LivenessPolicy{});
    v.decided_at = utc_now();
    v.note = "quoted \"note\"";
    CHECK(deserialize_verdict(serialize_verdict(v)) == v);
}

TEST_CASE("policy validation") {
    CHECK_NOTHROW(LivenessPolicy{}.validate());
    LivenessPolicy p;
    p.n_samples = 1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.channel_tolerance = 256;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.percent_threshold = 1.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.sample_interval = Millis{0};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("still sampling against scripted endpoints") {
    ScriptedFetcher fetcher;
    const std::string url = "http://a.example/c.jpg";
    const CandidateLink link{url, MediaKind::StillImage, "http://a.example/", 0};

    fetcher.script(url, {{200, "image/jpeg", solid_jpeg({0, 0, 0})},
                         {200, "image/jpeg", solid_jpeg({250, 250, 250})},
                         {200, "image/jpeg", solid_jpeg({0, 0, 0})}});
    CHECK(identify_candidate(link, fast_policy(), fetcher, {}).label == LivenessLabel::Live);
    CHECK(fetcher.calls(url) == 3);

    fetcher.set(url, {200, "image/jpeg", solid_jpeg({9, 9, 9})});
    CHECK(identify_candidate(link, fast_policy(), fetcher, {}).label == LivenessLabel::Static);

    fetcher.set(url, {404, "text/html", "missing"});
    const auto set = sample_still(link, fast_policy(), fetcher, {});
    CHECK(set.samples.empty());
    CHECK(set.failures.size() == 3);
    const auto v = classify(set, fast_policy());
    CHECK(v.label == LivenessLabel::Indeterminate);
    CHECK(v.note.find("http_status") != std::string::npos);
}

TEST_CASE("streaming protocols are not sampled") {
    ScriptedFetcher fetcher;
    const CandidateLink link{"rtsp://a.example/live", MediaKind::RtspLink, "http://a.example/", 0};
    const auto v = identify_candidate(link, fast_policy(), fetcher, {});
    CHECK(v.label == LivenessLabel::Indeterminate);
    CHECK(fetcher.calls("rtsp://a.example/live") == 0);
}
