#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace camscout {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    bool operator==(const Rgb&) const = default;
};

/// Row-major RGB image.
class Raster {
public:
    Raster() = default;
    /// Throws std::invalid_argument unless width, height > 0.
    Raster(int width, int height, Rgb fill = {});
    /// Throws std::invalid_argument unless pixels.size() == width * height.
    Raster(int width, int height, std::vector<Rgb> pixels);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return pixels_.size(); }
    bool empty() const { return pixels_.empty(); }

    Rgb& at(int x, int y) { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
    const Rgb& at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
    const std::vector<Rgb>& pixels() const { return pixels_; }
    std::vector<Rgb>& pixels() { return pixels_; }

    bool same_dimensions(const Raster& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

    bool operator==(const Raster&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Rgb> pixels_;
};

class ImageDecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ImageFormat { Jpeg, Png, Unknown };

ImageFormat sniff_image_format(std::string_view bytes);

/// JPEG starts with SOI (FF D8) and ends with EOI (FF D9).
bool has_jpeg_framing(std::string_view bytes);

/// Decodes JPEG or PNG into RGB. Throws ImageDecodeError.
Raster decode_image(std::string_view bytes);
std::optional<Raster> try_decode_image(std::string_view bytes);

/// Baseline JPEG encoding, deterministic for a given raster and quality.
std::string encode_jpeg(const Raster& raster, int quality = 90);

}  // namespace camscout
