#include "camscout/raster.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include <jpeglib.h>
#include <png.h>

namespace camscout {

Raster::Raster(int width, int height, Rgb fill) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("raster dimensions must be positive");
    pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

Raster::Raster(int width, int height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("raster dimensions must be positive");
    if (pixels_.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("pixel count does not match dimensions");
}

ImageFormat sniff_image_format(std::string_view b) {
    if (b.size() >= 3 && static_cast<unsigned char>(b[0]) == 0xFF &&
        static_cast<unsigned char>(b[1]) == 0xD8 && static_cast<unsigned char>(b[2]) == 0xFF)
        return ImageFormat::Jpeg;
    if (b.size() >= 8 && b.substr(0, 8) == std::string_view("\x89PNG\r\n\x1a\n", 8))
        return ImageFormat::Png;
    return ImageFormat::Unknown;
}

bool has_jpeg_framing(std::string_view b) {
    return b.size() >= 4 && static_cast<unsigned char>(b[0]) == 0xFF &&
           static_cast<unsigned char>(b[1]) == 0xD8 &&
           static_cast<unsigned char>(b[b.size() - 2]) == 0xFF &&
           static_cast<unsigned char>(b[b.size() - 1]) == 0xD9;
}

namespace {

struct JpegErrorManager {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

void jpeg_silent(j_common_ptr, int) {}

// Kept free of C++ objects with non-trivial destructors between setjmp and
// any longjmp back into it.
bool decode_jpeg_into(std::string_view bytes, std::vector<Rgb>& out, int& width, int& height,
                      char* message) {
    jpeg_decompress_struct cinfo;
    JpegErrorManager err;
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;
    err.pub.emit_message = jpeg_silent;
    if (setjmp(err.jump)) {
        std::strncpy(message, err.message, JMSG_LENGTH_MAX - 1);
        jpeg_destroy_decompress(&cinfo);
        return false;
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, reinterpret_cast<const unsigned char*>(bytes.data()),
                 static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);
    width = static_cast<int>(cinfo.output_width);
    height = static_cast<int>(cinfo.output_height);
    out.resize(static_cast<std::size_t>(width) * height);
    while (cinfo.output_scanline < cinfo.output_height) {
        auto* row = reinterpret_cast<JSAMPROW>(&out[static_cast<std::size_t>(cinfo.output_scanline) * width]);
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return true;
}

Raster decode_png(std::string_view bytes) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
        throw ImageDecodeError(std::string("png: ") + image.message);
    image.format = PNG_FORMAT_RGB;
    if (image.width == 0 || image.height == 0) {
        png_image_free(&image);
        throw ImageDecodeError("png: empty image");
    }
    std::vector<Rgb> pixels(static_cast<std::size_t>(image.width) * image.height);
    static_assert(sizeof(Rgb) == 3);
    if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
        std::string msg = image.message;
        png_image_free(&image);
        throw ImageDecodeError("png: " + msg);
    }
    return Raster(static_cast<int>(image.width), static_cast<int>(image.height), std::move(pixels));
}

}  // namespace

Raster decode_image(std::string_view bytes) {
    switch (sniff_image_format(bytes)) {
        case ImageFormat::Jpeg: {
            std::vector<Rgb> pixels;
            int width = 0, height = 0;
            char message[JMSG_LENGTH_MAX] = {};
            if (!decode_jpeg_into(bytes, pixels, width, height, message))
                throw ImageDecodeError(std::string("jpeg: ") + message);
            if (width <= 0 || height <= 0) throw ImageDecodeError("jpeg: empty image");
            return Raster(width, height, std::move(pixels));
        }
        case ImageFormat::Png:
            return decode_png(bytes);
        case ImageFormat::Unknown:
            break;
    }
    throw ImageDecodeError("unrecognized image format");
}

std::optional<Raster> try_decode_image(std::string_view bytes) {
    try {
        return decode_image(bytes);
    } catch (const ImageDecodeError&) {
        return std::nullopt;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::string encode_jpeg(const Raster& raster, int quality) {
    if (raster.empty()) throw std::invalid_argument("cannot encode an empty raster");
    jpeg_compress_struct cinfo;
    jpeg_error_mgr jerr;
    cinfo.err = jpeg_std_error(&jerr);
    jpeg_create_compress(&cinfo);

    unsigned char* buffer = nullptr;
    unsigned long size = 0;
    jpeg_mem_dest(&cinfo, &buffer, &size);
    cinfo.image_width = static_cast<JDIMENSION>(raster.width());
    cinfo.image_height = static_cast<JDIMENSION>(raster.height());
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);
    while (cinfo.next_scanline < cinfo.image_height) {
        auto* row = const_cast<JSAMPROW>(reinterpret_cast<const JSAMPLE*>(
            &raster.pixels()[static_cast<std::size_t>(cinfo.next_scanline) * raster.width()]));
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    std::string out(reinterpret_cast<const char*>(buffer), size);
    jpeg_destroy_compress(&cinfo);
    std::free(buffer);
    return out;
}

}  // namespace camscout
