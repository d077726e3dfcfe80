#pragma once

#include "camscout/http.hpp"
#include "camscout/raster.hpp"

#include <atomic>
#include <filesystem>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <vector>

namespace camscout::test {

struct ScriptedResponse {
    int status = 200;
    std::string content_type;
    std::string body;
    FetchError error = FetchError::None;
};

// In-memory Fetcher: each URL answers from its script in order, repeating the
// last response once the script is exhausted. Unknown URLs fail with Connect.
class ScriptedFetcher final : public Fetcher {
public:
    void script(const std::string& url, std::vector<ScriptedResponse> responses) {
        std::lock_guard lock(mu_);
        scripts_[url] = std::move(responses);
        cursor_[url] = 0;
    }
    void set(const std::string& url, ScriptedResponse response) { script(url, {std::move(response)}); }

    std::size_t calls(const std::string& url) const {
        std::lock_guard lock(mu_);
        auto it = calls_.find(url);
        return it == calls_.end() ? 0 : it->second;
    }

    /// Bytes handed to on_data per call in stream().
    std::size_t chunk_size = 7;

    FetchResult get(const std::string& url, const FetchOptions& options) override {
        FetchResult r;
        r.started = utc_now();
        ScriptedResponse s = next(url);
        r.finished = r.started;
        r.status = s.status;
        r.content_type = s.content_type;
        if (s.error != FetchError::None) {
            r.error = s.error;
            r.message = "scripted failure";
            return r;
        }
        if (s.status < 200 || s.status >= 300) {
            r.error = FetchError::HttpStatus;
            return r;
        }
        if (s.body.size() > options.max_body) {
            r.error = FetchError::Oversized;
            return r;
        }
        r.body = std::move(s.body);
        return r;
    }

    FetchResult stream(const std::string& url, const FetchOptions&, const StreamHandler& handler) override {
        FetchResult r;
        r.started = utc_now();
        ScriptedResponse s = next(url);
        r.status = s.status;
        r.content_type = s.content_type;
        if (s.error != FetchError::None) {
            r.error = s.error;
            return r;
        }
        if (s.status < 200 || s.status >= 300) {
            r.error = FetchError::HttpStatus;
            return r;
        }
        if (handler.on_response && !handler.on_response(s.status, s.content_type)) {
            r.error = FetchError::Canceled;
            return r;
        }
        for (std::size_t off = 0; off < s.body.size(); off += chunk_size) {
            if (handler.on_data && !handler.on_data(std::string_view(s.body).substr(off, chunk_size))) {
                r.error = FetchError::Canceled;
                return r;
            }
        }
        r.finished = utc_now();
        return r;
    }

private:
    ScriptedResponse next(const std::string& url) {
        std::lock_guard lock(mu_);
        ++calls_[url];
        auto it = scripts_.find(url);
        if (it == scripts_.end() || it->second.empty()) return {0, "", "", FetchError::Connect};
        std::size_t& i = cursor_[url];
        const ScriptedResponse& s = it->second[std::min(i, it->second.size() - 1)];
        ++i;
        return s;
    }

    mutable std::mutex mu_;
    std::map<std::string, std::vector<ScriptedResponse>> scripts_;
    std::map<std::string, std::size_t> cursor_;
    std::map<std::string, std::size_t> calls_;
};

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("camscout-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline Raster random_raster(std::mt19937_64& rng, int w, int h) {
    std::uniform_int_distribution<int> ch(0, 255);
    Raster r(w, h);
    for (auto& p : r.pixels())
        p = Rgb{static_cast<std::uint8_t>(ch(rng)), static_cast<std::uint8_t>(ch(rng)),
                static_cast<std::uint8_t>(ch(rng))};
    return r;
}

inline std::string solid_jpeg(Rgb color, int w = 32, int h = 24) { return encode_jpeg(Raster(w, h, color), 90); }

}  // namespace camscout::test
