#include "camscout/mockfleet.hpp"

#include "camscout/digest.hpp"
#include "json_codec.hpp"

#include <httplib.h>
#include <fmt/format.h>

#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <thread>

namespace camscout {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) { return splitmix(a ^ splitmix(b)); }

Rgb color_from(std::uint64_t h) {
    return Rgb{static_cast<std::uint8_t>(h), static_cast<std::uint8_t>(h >> 8),
               static_cast<std::uint8_t>(h >> 16)};
}

void fill_rect(Raster& r, int x0, int y0, int w, int h, Rgb c) {
    for (int y = std::max(0, y0); y < std::min(r.height(), y0 + h); ++y)
        for (int x = std::max(0, x0); x < std::min(r.width(), x0 + w); ++x) r.at(x, y) = c;
}

}  // namespace

Raster generate_scene(std::uint64_t seed, int endpoint_id, std::int64_t frame_index, int width, int height) {
    const std::uint64_t base = mix(seed, static_cast<std::uint64_t>(endpoint_id));
    Raster r(width, height, color_from(base));

    for (int j = 0; j < 4; ++j) {
        const std::uint64_t h = mix(base, 100 + j);
        const int bw = width / 6 + static_cast<int>(h % (width / 6 + 1));
        const int bh = height / 6 + static_cast<int>((h >> 12) % (height / 6 + 1));
        const int x = static_cast<int>((h >> 24) % static_cast<std::uint64_t>(width));
        const int y = height / 4 + static_cast<int>((h >> 36) % static_cast<std::uint64_t>(height / 2 + 1));
        fill_rect(r, x, y, bw, bh, color_from(h >> 40));
    }

    // Band: each channel steps by an odd amount per frame, so consecutive
    // frames differ by at least min(step, 256 - step) >= 57 in every channel.
    const auto f = static_cast<std::uint64_t>(frame_index);
    const Rgb band{static_cast<std::uint8_t>((base & 0xff) + f * 97),
                   static_cast<std::uint8_t>(((base >> 8) & 0xff) + f * 57),
                   static_cast<std::uint8_t>(((base >> 16) & 0xff) + f * 151)};
    fill_rect(r, 0, 0, width, height / 4, band);

    const int block = std::max(4, width / 10);
    const int travel = std::max(1, width - block);
    fill_rect(r, static_cast<int>((f * 13) % static_cast<std::uint64_t>(travel)), height / 2 - block / 2,
              block, block, Rgb{255, 255, 255});

    // Counter strip: 16 cells, one bit of the frame index each.
    const int cell = std::max(1, width / 16);
    const int strip = std::max(2, height / 15);
    for (int bit = 0; bit < 16; ++bit) {
        const bool on = (f >> bit) & 1u;
        fill_rect(r, bit * cell, height - strip, cell, strip, on ? Rgb{250, 250, 250} : Rgb{5, 5, 5});
    }
    return r;
}

std::string generate_image(std::uint64_t seed, int endpoint_id, std::int64_t frame_index, int width, int height) {
    return encode_jpeg(generate_scene(seed, endpoint_id, frame_index, width, height), 90);
}

void FleetSpec::validate() const {
    if (static_images < 0 || rotating_images < 0 || mjpeg_streams < 0 || hls_streams < 0 || decoy_pages < 0)
        throw std::invalid_argument("fleet counts must be >= 0");
    if (rotation_period <= Millis{0} || frame_period <= Millis{0} || segment_period <= Millis{0})
        throw std::invalid_argument("fleet periods must be > 0");
    if (endpoint_delay < Millis{0}) throw std::invalid_argument("endpoint_delay must be >= 0");
    if (!(error_rate >= 0.0 && error_rate <= 1.0)) throw std::invalid_argument("error_rate must be in [0, 1]");
    if (image_width < 16 || image_height < 16) throw std::invalid_argument("images must be at least 16x16");
    if (server_threads < 1) throw std::invalid_argument("server_threads must be >= 1");
    if (port < 0 || port > 65535) throw std::invalid_argument("port out of range");
}

std::string_view to_string(FleetEndpointKind kind) {
    switch (kind) {
        case FleetEndpointKind::StaticImage: return "static_image";
        case FleetEndpointKind::RotatingImage: return "rotating_image";
        case FleetEndpointKind::MjpegStream: return "mjpeg_stream";
        case FleetEndpointKind::HlsStream: return "hls_stream";
        case FleetEndpointKind::DecoyPage: return "decoy_page";
    }
    return "unknown";
}

namespace {

constexpr const char* kBoundary = "camscoutframe";
constexpr int kStaticIdBase = 0;
constexpr int kRotatingIdBase = 100'000;
constexpr int kMjpegIdBase = 200'000;
constexpr int kHlsSegmentsShown = 3;

std::string hls_linked_path(int i) {
    // Even streams are linked through a master playlist, odd ones directly.
    return i % 2 == 0 ? fmt::format("/cam/hls/{}/master.m3u8", i) : fmt::format("/cam/hls/{}/live.m3u8", i);
}

}  // namespace

struct MockFleet::Impl {
    FleetSpec spec;
    std::vector<FleetEndpoint> endpoints;
    std::map<std::string, std::size_t> by_path;
    httplib::Server server;
    std::thread listener;
    int bound_port = 0;
    std::atomic<bool> stopping{false};
    const std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    mutable std::mutex mu;
    std::vector<FleetRequest> log;
    int in_flight = 0;
    int max_in_flight = 0;
    std::map<std::string, int> key_in_flight;
    std::map<std::string, int> key_max_in_flight;
    std::map<std::string, std::set<std::string>> emitted;
    std::mt19937_64 rng;

    mutable std::mutex cache_mu;
    std::map<std::pair<int, std::int64_t>, std::shared_ptr<const std::string>> image_cache;

    // Holds a slot in the fleet-wide and per-endpoint concurrency gauges.
    class Slot {
    public:
        Slot(Impl& impl, std::string key) : impl_(impl), key_(std::move(key)) {}
        ~Slot() {
            std::lock_guard lock(impl_.mu);
            release_locked();
        }
        Slot(const Slot&) = delete;
        Slot& operator=(const Slot&) = delete;

        /// Idempotent; caller holds impl.mu.
        void release_locked() {
            if (released_) return;
            released_ = true;
            --impl_.in_flight;
            --impl_.key_in_flight[key_];
        }

    private:
        Impl& impl_;
        std::string key_;
        bool released_ = false;
    };

    // Streams parked between frames. A client that hung up is only noticed
    // when the stream wakes, so admit() reaps them first to keep the gauges
    // exact.
    std::map<Slot*, httplib::DataSink*> idle_streams;

    void reap_idle_streams_locked() {
        for (auto it = idle_streams.begin(); it != idle_streams.end();) {
            if (!it->second->is_writable()) {
                it->first->release_locked();
                it = idle_streams.erase(it);
            } else {
                ++it;
            }
        }
    }

    explicit Impl(FleetSpec s) : spec(std::move(s)), rng(spec.seed) {
        for (int i = 0; i < spec.static_images; ++i)
            add({fmt::format("/cam/static/{}.jpg", i), FleetEndpointKind::StaticImage, i, LivenessLabel::Static});
        for (int i = 0; i < spec.rotating_images; ++i)
            add({fmt::format("/cam/rotating/{}.jpg", i), FleetEndpointKind::RotatingImage, i, LivenessLabel::Live});
        for (int i = 0; i < spec.mjpeg_streams; ++i)
            add({fmt::format("/cam/mjpeg/{}/video.mjpg", i), FleetEndpointKind::MjpegStream, i, LivenessLabel::Live});
        for (int i = 0; i < spec.hls_streams; ++i)
            add({hls_linked_path(i), FleetEndpointKind::HlsStream, i, LivenessLabel::Live});
        for (int i = 0; i < spec.decoy_pages; ++i)
            add({fmt::format("/pages/decoy{}.html", i), FleetEndpointKind::DecoyPage, i, std::nullopt});
    }

    void add(FleetEndpoint e) {
        by_path[e.path] = endpoints.size();
        endpoints.push_back(std::move(e));
    }

    std::int64_t period_index(Millis period) const {
        const auto elapsed = std::chrono::steady_clock::now() - start;
        return static_cast<std::int64_t>(elapsed / period);
    }

    std::shared_ptr<const std::string> image(int endpoint_id, std::int64_t frame) {
        const auto key = std::make_pair(endpoint_id, frame);
        {
            std::lock_guard lock(cache_mu);
            if (auto it = image_cache.find(key); it != image_cache.end()) return it->second;
        }
        auto bytes = std::make_shared<const std::string>(
            generate_image(spec.seed, endpoint_id, frame, spec.image_width, spec.image_height));
        std::lock_guard lock(cache_mu);
        if (image_cache.size() > 4096) image_cache.clear();
        return image_cache.emplace(key, bytes).first->second;
    }

    // Logs the request and decides whether to inject an error. Returns the
    // status to answer with and a concurrency slot for the request.
    std::pair<int, std::unique_ptr<Slot>> admit(const std::string& path, const std::string& key,
                                                 bool camera, int status) {
        std::lock_guard lock(mu);
        if (camera && status == 200 && spec.error_rate > 0.0) {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            if (u(rng) < spec.error_rate) status = 503;
        }
        reap_idle_streams_locked();
        ++in_flight;
        max_in_flight = std::max(max_in_flight, in_flight);
        const int per_key = ++key_in_flight[key];
        key_max_in_flight[key] = std::max(key_max_in_flight[key], per_key);

        Timestamp now = utc_now();
        if (!log.empty() && now <= log.back().at) now = log.back().at + std::chrono::microseconds(1);
        log.push_back(FleetRequest{now, path, status, in_flight});
        return {status, std::make_unique<Slot>(*this, key)};
    }

    void delay(bool camera) const {
        if (camera && spec.endpoint_delay > Millis{0}) std::this_thread::sleep_for(spec.endpoint_delay);
    }

    std::string index_html() const {
        std::string body = "<!DOCTYPE html>\n<html><head><title>Camera directory</title></head><body>\n"
                           "<h1>Public cameras</h1>\n<ul>\n";
        for (const auto& e : endpoints) {
            switch (e.kind) {
                case FleetEndpointKind::StaticImage:
                case FleetEndpointKind::RotatingImage:
                    body += fmt::format("<li><img src=\"{}\" alt=\"camera\"></li>\n", e.path);
                    break;
                case FleetEndpointKind::MjpegStream:
                case FleetEndpointKind::HlsStream:
                    body += fmt::format("<li><a href=\"{}\">stream {}</a></li>\n", e.path, e.index);
                    break;
                case FleetEndpointKind::DecoyPage:
                    body += fmt::format("<li><a href=\"{}\">about {}</a></li>\n", e.path, e.index);
                    break;
            }
        }
        body += "</ul>\n<p><a href=\"/private/archive.html\">archive</a> "
                "<a href=\"mailto:webmaster@fleet.invalid\">contact</a></p>\n"
                "<script>var backupFeed = \"rtsp://127.0.0.1:8554/live/backup\";</script>\n"
                "</body></html>\n";
        return body;
    }

    std::string decoy_html(int i) const {
        const int next = spec.decoy_pages > 0 ? (i + 1) % spec.decoy_pages : 0;
        return fmt::format(
            "<!DOCTYPE html>\n<html><head><title>About page {0}</title>"
            "<link rel=\"stylesheet\" href=\"/assets/site.css\"></head><body>\n"
            "<p>Local news and weather for district {0}. Nothing to watch here.</p>\n"
            "<img src=\"/assets/banner.gif\" alt=\"banner\">\n"
            "<a href=\"/\">home</a> <a href=\"/pages/decoy{1}.html\">next</a>\n"
            "</body></html>\n",
            i, next);
    }

    std::string media_playlist(std::int64_t sequence) const {
        const double seconds = std::chrono::duration<double>(spec.segment_period).count();
        std::string out = fmt::format("#EXTM3U\n#EXT-X-VERSION:3\n#EXT-X-TARGETDURATION:{}\n#EXT-X-MEDIA-SEQUENCE:{}\n",
                                      static_cast<int>(std::ceil(seconds)), sequence);
        for (std::int64_t s = sequence; s < sequence + kHlsSegmentsShown; ++s)
            out += fmt::format("#EXTINF:{:.3f},\nseg{}.ts\n", seconds, s);
        return out;
    }

    static std::string master_playlist() {
        return "#EXTM3U\n#EXT-X-STREAM-INF:BANDWIDTH=800000,RESOLUTION=160x120\nlive.m3u8\n";
    }

    std::string segment_bytes(int stream, std::int64_t sequence) const {
        // MPEG-TS shaped filler: 188-byte packets with the 0x47 sync byte.
        std::string out(188 * 16, '\0');
        std::uint64_t h = mix(mix(spec.seed, 300'000 + stream), static_cast<std::uint64_t>(sequence));
        for (std::size_t p = 0; p < out.size(); p += 188) {
            out[p] = 0x47;
            for (std::size_t k = 1; k < 188; ++k) {
                h = splitmix(h);
                out[p + k] = static_cast<char>(h & 0xff);
            }
        }
        return out;
    }

    void install_routes();
    std::string manifest_json() const;
    std::string current_digest(const FleetEndpoint& e);
};

void MockFleet::Impl::install_routes() {
    using httplib::Request;
    using httplib::Response;

    auto page = [this](const std::string& key, std::string body, const char* type = "text/html; charset=utf-8") {
        return [this, key, body = std::move(body), type](const Request& req, Response& res) {
            auto [status, slot] = admit(req.path, key, false, 200);
            res.status = status;
            res.set_content(body, type);
        };
    };
    const std::string index = index_html();
    server.Get("/", page("/", index));
    server.Get("/index.html", page("/", index));
    server.Get("/robots.txt", page("/robots.txt", "User-agent: *\nDisallow: /private/\n", "text/plain"));
    server.Get("/private/archive.html",
               page("/private/archive.html", "<html><body><a href=\"/\">home</a></body></html>"));

    server.Get(R"(/pages/decoy(\d+)\.html)", [this](const Request& req, Response& res) {
        const int i = std::stoi(req.matches[1]);
        const bool known = i < spec.decoy_pages;
        auto [status, slot] = admit(req.path, req.path, false, known ? 200 : 404);
        res.status = status;
        if (known) res.set_content(decoy_html(i), "text/html; charset=utf-8");
    });

    auto image_route = [this](FleetEndpointKind kind, int count, int id_base) {
        return [this, kind, count, id_base](const Request& req, Response& res) {
            const int i = std::stoi(req.matches[1]);
            const bool known = i < count;
            auto [status, slot] = admit(req.path, req.path, true, known ? 200 : 404);
            delay(true);
            res.status = status;
            if (status != 200) return;
            const std::int64_t frame =
                kind == FleetEndpointKind::RotatingImage ? period_index(spec.rotation_period) : 0;
            res.set_content(*image(id_base + i, frame), "image/jpeg");
        };
    };
    server.Get(R"(/cam/static/(\d+)\.jpg)",
               image_route(FleetEndpointKind::StaticImage, spec.static_images, kStaticIdBase));
    server.Get(R"(/cam/rotating/(\d+)\.jpg)",
               image_route(FleetEndpointKind::RotatingImage, spec.rotating_images, kRotatingIdBase));

    server.Get(R"(/cam/mjpeg/(\d+)/video\.mjpg)", [this](const Request& req, Response& res) {
        const int i = std::stoi(req.matches[1]);
        const bool known = i < spec.mjpeg_streams;
        auto [status, slot] = admit(req.path, req.path, true, known ? 200 : 404);
        delay(true);
        res.status = status;
        if (status != 200) return;

        std::shared_ptr<Slot> held = std::move(slot);
        const std::string path = req.path;
        auto next_frame = std::make_shared<std::int64_t>(-1);
        res.set_header("Cache-Control", "no-cache");
        res.set_chunked_content_provider(
            fmt::format("multipart/x-mixed-replace; boundary={}", kBoundary),
            [this, i, path, held, next_frame](std::size_t, httplib::DataSink& sink) {
                if (*next_frame >= 0) {
                    const auto due = start + spec.frame_period * *next_frame;
                    {
                        std::lock_guard lock(mu);
                        idle_streams[held.get()] = &sink;
                    }
                    bool hung_up = false;
                    while (std::chrono::steady_clock::now() < due) {
                        if (stopping || !sink.is_writable()) {
                            hung_up = true;
                            break;
                        }
                        std::this_thread::sleep_for(std::min<std::chrono::steady_clock::duration>(
                            due - std::chrono::steady_clock::now(), std::chrono::milliseconds(20)));
                    }
                    {
                        std::lock_guard lock(mu);
                        idle_streams.erase(held.get());
                    }
                    if (hung_up) {
                        sink.done();
                        return true;
                    }
                }
                if (stopping) {
                    sink.done();
                    return true;
                }
                const std::int64_t frame = period_index(spec.frame_period);
                auto jpeg = image(kMjpegIdBase + i, frame);
                {
                    std::lock_guard lock(mu);
                    emitted[path].insert(sha256_hex(*jpeg));
                }
                std::string part = fmt::format("--{}\r\nContent-Type: image/jpeg\r\nContent-Length: {}\r\n\r\n",
                                               kBoundary, jpeg->size());
                part += *jpeg;
                part += "\r\n";
                *next_frame = frame + 1;
                if (!sink.write(part.data(), part.size())) return false;
                return true;
            });
    });

    auto hls_playlist = [this](bool master) {
        return [this, master](const Request& req, Response& res) {
            const int i = std::stoi(req.matches[1]);
            const bool known = i < spec.hls_streams && (!master || i % 2 == 0);
            const std::string key = known ? hls_linked_path(i) : req.path;
            auto [status, slot] = admit(req.path, key, true, known ? 200 : 404);
            delay(true);
            res.status = status;
            if (status != 200) return;
            res.set_header("Cache-Control", "no-cache");
            res.set_content(master ? master_playlist() : media_playlist(period_index(spec.segment_period)),
                            "application/vnd.apple.mpegurl");
        };
    };
    server.Get(R"(/cam/hls/(\d+)/master\.m3u8)", hls_playlist(true));
    server.Get(R"(/cam/hls/(\d+)/live\.m3u8)", hls_playlist(false));
    server.Get(R"(/cam/hls/(\d+)/seg(\d+)\.ts)", [this](const Request& req, Response& res) {
        const int i = std::stoi(req.matches[1]);
        const std::int64_t seq = std::stoll(req.matches[2]);
        const bool known = i < spec.hls_streams;
        auto [status, slot] = admit(req.path, known ? hls_linked_path(i) : req.path, true, known ? 200 : 404);
        delay(true);
        res.status = status;
        if (status == 200) res.set_content(segment_bytes(i, seq), "video/mp2t");
    });

    server.Get("/__manifest", [this](const Request&, Response& res) {
        res.set_content(manifest_json(), "application/json");
    });

    server.Get(R"(.*)", [this](const Request& req, Response& res) {
        auto [status, slot] = admit(req.path, req.path, false, 404);
        res.status = status;
        res.set_content("not found", "text/plain");
    });
}

std::string MockFleet::Impl::current_digest(const FleetEndpoint& e) {
    switch (e.kind) {
        case FleetEndpointKind::StaticImage:
            return sha256_hex(*image(kStaticIdBase + e.index, 0));
        case FleetEndpointKind::RotatingImage:
            return sha256_hex(*image(kRotatingIdBase + e.index, period_index(spec.rotation_period)));
        case FleetEndpointKind::MjpegStream:
            return sha256_hex(*image(kMjpegIdBase + e.index, period_index(spec.frame_period)));
        case FleetEndpointKind::HlsStream:
            return sha256_hex(media_playlist(period_index(spec.segment_period)));
        case FleetEndpointKind::DecoyPage:
            return sha256_hex(decoy_html(e.index));
    }
    return {};
}

std::string MockFleet::Impl::manifest_json() const {
    auto* self = const_cast<Impl*>(this);
    json endpoints_json = json::array();
    for (const auto& e : endpoints) {
        endpoints_json.push_back({{"path", e.path},
                                  {"kind", to_string(e.kind)},
                                  {"label", e.label ? json(to_string(*e.label)) : json(nullptr)},
                                  {"current_digest", self->current_digest(e)}});
    }
    std::lock_guard lock(mu);
    json requests = json::array();
    for (const auto& r : log)
        requests.push_back({{"at", format_rfc3339(r.at)}, {"path", r.path}, {"status", r.status},
                            {"in_flight", r.in_flight}});
    json gauges = json::object();
    for (const auto& [key, peak] : key_max_in_flight)
        gauges[key] = {{"in_flight", key_in_flight.at(key)}, {"max_in_flight", peak}};
    json frames = json::object();
    for (const auto& [path, digests] : emitted) frames[path] = digests;
    return json{{"seed", spec.seed},
                {"endpoints", endpoints_json},
                {"requests", requests},
                {"max_in_flight", max_in_flight},
                {"concurrency", gauges},
                {"emitted_frames", frames}}
        .dump();
}

MockFleet::MockFleet(FleetSpec spec) {
    spec.validate();
    impl_ = std::make_unique<Impl>(std::move(spec));
    auto& impl = *impl_;
    const int threads = impl.spec.server_threads;
    // Plain SO_REUSEADDR: SO_REUSEPORT would let two fleets share a port.
    impl.server.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    impl.server.new_task_queue = [threads] { return new httplib::ThreadPool(static_cast<std::size_t>(threads)); };
    impl.server.set_keep_alive_max_count(1);
    impl.install_routes();

    if (impl.spec.port == 0) {
        impl.bound_port = impl.server.bind_to_any_port(impl.spec.host);
    } else if (impl.server.bind_to_port(impl.spec.host, impl.spec.port)) {
        impl.bound_port = impl.spec.port;
    } else {
        impl.bound_port = -1;
    }
    if (impl.bound_port <= 0)
        throw FleetBindError(fmt::format("cannot bind {}:{}", impl.spec.host, impl.spec.port));
    impl.listener = std::thread([&impl] { impl.server.listen_after_bind(); });
    impl.server.wait_until_ready();
}

MockFleet::~MockFleet() { stop(); }

void MockFleet::stop() {
    if (!impl_ || impl_->stopping.exchange(true)) return;
    impl_->server.stop();
    if (impl_->listener.joinable()) impl_->listener.join();
}

int MockFleet::port() const { return impl_->bound_port; }
std::string MockFleet::base_url() const { return fmt::format("http://{}:{}", impl_->spec.host, impl_->bound_port); }
std::string MockFleet::index_url() const { return base_url() + "/"; }
std::string MockFleet::url_for(const std::string& path) const { return base_url() + path; }
const FleetSpec& MockFleet::spec() const { return impl_->spec; }
const std::vector<FleetEndpoint>& MockFleet::endpoints() const { return impl_->endpoints; }

std::optional<LivenessLabel> MockFleet::ground_truth(const std::string& path) const {
    if (auto it = impl_->by_path.find(path); it != impl_->by_path.end()) return impl_->endpoints[it->second].label;
    if (path == "/" || path == "/index.html" || path == "/private/archive.html") return std::nullopt;
    throw UnknownFleetPath("not a fleet path: " + path);
}

std::string MockFleet::current_digest(const std::string& path) const {
    auto it = impl_->by_path.find(path);
    if (it == impl_->by_path.end()) throw UnknownFleetPath("not a fleet path: " + path);
    return impl_->current_digest(impl_->endpoints[it->second]);
}

std::vector<FleetRequest> MockFleet::request_log() const {
    std::lock_guard lock(impl_->mu);
    return impl_->log;
}

std::set<std::string> MockFleet::emitted_frames(const std::string& path) const {
    std::lock_guard lock(impl_->mu);
    auto it = impl_->emitted.find(path);
    return it == impl_->emitted.end() ? std::set<std::string>{} : it->second;
}

int MockFleet::max_in_flight() const {
    std::lock_guard lock(impl_->mu);
    return impl_->max_in_flight;
}

int MockFleet::max_in_flight(const std::string& path) const {
    std::lock_guard lock(impl_->mu);
    auto it = impl_->key_max_in_flight.find(path);
    return it == impl_->key_max_in_flight.end() ? 0 : it->second;
}

std::string MockFleet::manifest_json() const { return impl_->manifest_json(); }

}  // namespace camscout
