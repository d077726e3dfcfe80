#pragma once

#include "camscout/raster.hpp"
#include "camscout/time.hpp"
#include "camscout/verdict.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace camscout {

/// Synthetic scene for (seed, endpoint, frame): background and blocks fixed
/// per endpoint, a quarter-height band whose colour jumps every frame, a
/// moving block and a binary frame counter strip. Consecutive frames differ
/// in well over 1% of pixels by far more than 10 channel units.
Raster generate_scene(std::uint64_t seed, int endpoint_id, std::int64_t frame_index, int width = 160,
                      int height = 120);

/// JPEG encoding of generate_scene. Byte-identical for identical arguments.
std::string generate_image(std::uint64_t seed, int endpoint_id, std::int64_t frame_index, int width = 160,
                           int height = 120);

struct FleetSpec {
    int static_images = 0;
    int rotating_images = 0;
    Millis rotation_period{5'000};
    int mjpeg_streams = 0;
    Millis frame_period{500};
    int hls_streams = 0;
    Millis segment_period{4'000};
    int decoy_pages = 0;
    std::string host = "127.0.0.1";
    /// 0 picks a free port.
    int port = 0;
    std::uint64_t seed = 1;
    /// Added before answering any camera endpoint request.
    Millis endpoint_delay{0};
    /// Probability that a camera endpoint request is answered with 503.
    double error_rate = 0.0;
    int image_width = 160;
    int image_height = 120;
    int server_threads = 64;

    /// Throws std::invalid_argument.
    void validate() const;
};

enum class FleetEndpointKind { StaticImage, RotatingImage, MjpegStream, HlsStream, DecoyPage };

std::string_view to_string(FleetEndpointKind kind);

struct FleetEndpoint {
    std::string path;
    FleetEndpointKind kind;
    int index = 0;
    /// Live, Static, or nullopt for decoy pages.
    std::optional<LivenessLabel> label;
};

struct FleetRequest {
    Timestamp at{};
    std::string path;
    int status = 0;
    /// Requests in flight (fleet-wide) including this one, at arrival.
    int in_flight = 0;
};

class UnknownFleetPath : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class FleetBindError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// In-process HTTP server emulating a fleet of camera endpoints with known
/// ground truth. Serving starts in the constructor and stops in stop() or
/// the destructor. All accessors are safe to call while serving.
class MockFleet {
public:
    /// Throws FleetBindError if the address cannot be bound.
    explicit MockFleet(FleetSpec spec);
    ~MockFleet();
    MockFleet(const MockFleet&) = delete;
    MockFleet& operator=(const MockFleet&) = delete;

    void stop();

    int port() const;
    /// "http://host:port"
    std::string base_url() const;
    std::string index_url() const;
    std::string url_for(const std::string& path) const;

    const FleetSpec& spec() const;
    const std::vector<FleetEndpoint>& endpoints() const;

    /// Expected verdict for a linked endpoint path; nullopt for decoys.
    /// Throws UnknownFleetPath.
    std::optional<LivenessLabel> ground_truth(const std::string& path) const;

    /// Digest of what the endpoint serves right now.
    std::string current_digest(const std::string& path) const;

    std::vector<FleetRequest> request_log() const;
    /// Every JPEG frame digest an MJPEG endpoint has emitted.
    std::set<std::string> emitted_frames(const std::string& path) const;
    int max_in_flight() const;
    int max_in_flight(const std::string& path) const;

    /// FleetManifest as JSON (also served at /__manifest).
    std::string manifest_json() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace camscout
