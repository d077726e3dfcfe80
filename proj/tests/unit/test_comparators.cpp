#include "camscout/liveness.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

using namespace camscout;
using camscout::test::random_raster;

namespace {

// Independent oracles, written against the definitions rather than the
// implementation.
double brute_percent(const Raster& a, const Raster& b, int tol) {
    int changed = 0;
    for (int y = 0; y < a.height(); ++y)
        for (int x = 0; x < a.width(); ++x) {
            const Rgb p = a.at(x, y), q = b.at(x, y);
            if (std::abs(p.r - q.r) > tol || std::abs(p.g - q.g) > tol || std::abs(p.b - q.b) > tol) ++changed;
        }
    return static_cast<double>(changed) / (a.width() * a.height());
}

double direct_luma(const Raster& r) {
    long double sum = 0;
    for (const Rgb& p : r.pixels()) sum += 0.299L * p.r + 0.587L * p.g + 0.114L * p.b;
    return static_cast<double>(sum / r.pixels().size());
}

}  // namespace

TEST_CASE("checksum_compare matches byte equality") {
    CHECK(checksum_compare("abc", "abc"));
    CHECK_FALSE(checksum_compare("abc", "abd"));
    CHECK(checksum_compare("", ""));
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> byte(0, 255), len(0, 64), coin(0, 3);
    for (int i = 0; i < 2000; ++i) {
        std::string a(static_cast<std::size_t>(len(rng)), '\0');
        for (auto& c : a) c = static_cast<char>(byte(rng));
        std::string b = a;
        if (coin(rng) != 0 && !b.empty()) b[static_cast<std::size_t>(byte(rng)) % b.size()] ^= 1;
        if (coin(rng) == 0) b += 'x';
        CHECK(checksum_compare(a, b) == (a == b));
    }
}

TEST_CASE("percent_diff examples") {
    Raster a(2, 2, Rgb{10, 20, 30});
    CHECK(percent_diff(a, a, 10) == 0.0);
    Raster b = a;
    b.at(1, 0).g = static_cast<std::uint8_t>(b.at(1, 0).g + 50);
    CHECK(percent_diff(a, b, 10) == 0.25);
    CHECK(percent_diff(a, b, 50) == 0.0);

    std::mt19937_64 rng(5);
    Raster r = random_raster(rng, 16, 16);
    Raster complement = r;
    for (auto& p : complement.pixels()) p = Rgb{std::uint8_t(255 - p.r), std::uint8_t(255 - p.g), std::uint8_t(255 - p.b)};
    // A channel and its complement differ by |255 - 2c| which is odd, so at
    // least 1; with tolerance 0 every pixel counts.
    CHECK(percent_diff(r, complement, 0) == 1.0);
    Raster mid(4, 4, Rgb{0, 0, 0});
    Raster mid_c(4, 4, Rgb{255, 255, 255});
    CHECK(percent_diff(mid, mid_c, 127) == 1.0);

    CHECK_THROWS_AS(percent_diff(Raster(2, 2), Raster(2, 3), 10), DimensionMismatch);
}

TEST_CASE("mean_luminance examples") {
    CHECK(mean_luminance(Raster(3, 3, Rgb{0, 0, 0})) == 0.0);
    CHECK(mean_luminance(Raster(3, 3, Rgb{255, 255, 255})) == 255.0);
    const double expected = 0.299 * 100 + 0.587 * 50 + 0.114 * 200;
    CHECK(std::abs(mean_luminance(Raster(5, 4, Rgb{100, 50, 200})) - expected) < 1e-9);
    CHECK(std::abs(expected - 82.05) < 1e-9);
}

TEST_CASE("luminance_diff examples") {
    const Raster black(4, 4, Rgb{0, 0, 0}), white(4, 4, Rgb{255, 255, 255});
    CHECK(luminance_diff(black, black) == 0.0);
    CHECK(luminance_diff(black, white) == 255.0);
    CHECK(luminance_diff(white, black) == 255.0);
    CHECK_THROWS_AS(luminance_diff(Raster(2, 2), Raster(3, 2)), DimensionMismatch);
}

TEST_CASE("comparators agree with brute-force oracles on random rasters") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> tol(0, 255), dim(1, 12);
    for (int i = 0; i < 500; ++i) {
        const int w = dim(rng), h = dim(rng);
        const Raster a = random_raster(rng, w, h), b = random_raster(rng, w, h);
        const int t = tol(rng);
        CHECK(percent_diff(a, b, t) == brute_percent(a, b, t));
        CHECK(std::abs(luminance_diff(a, b) - std::abs(direct_luma(a) - direct_luma(b))) < 1e-9);
    }
}

TEST_CASE("comparator properties") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> tol(0, 254);
    for (int i = 0; i < 300; ++i) {
        const Raster a = random_raster(rng, 8, 8);
        Raster b = a;
        // Perturb a random subset of pixels by small amounts so tolerance matters.
        std::uniform_int_distribution<int> delta(-40, 40), coin(0, 2);
        for (auto& p : b.pixels())
            if (coin(rng) == 0) p.r = static_cast<std::uint8_t>(std::clamp(p.r + delta(rng), 0, 255));

        const int t = tol(rng);
        const double p = percent_diff(a, b, t);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        CHECK(p == percent_diff(b, a, t));
        CHECK(percent_diff(a, b, t + 1) <= p);
        CHECK((p == 0.0) == (brute_percent(a, b, t) == 0.0));
        CHECK(percent_diff(a, a, t) == 0.0);

        const double l = luminance_diff(a, b);
        CHECK(l == luminance_diff(b, a));
        CHECK(l >= 0.0);
        CHECK(l <= 255.0);
        CHECK(luminance_diff(a, a) == 0.0);
    }
}

TEST_CASE("image codec round trip") {
    std::mt19937_64 rng(1);
    const Raster r(40, 30, Rgb{200, 100, 50});
    const std::string jpeg = encode_jpeg(r, 95);
    CHECK(sniff_image_format(jpeg) == ImageFormat::Jpeg);
    CHECK(has_jpeg_framing(jpeg));
    CHECK(encode_jpeg(r, 95) == jpeg);
    const Raster back = decode_image(jpeg);
    CHECK(back.width() == 40);
    CHECK(back.height() == 30);
    CHECK(percent_diff(r, back, 10) == 0.0);
    CHECK_FALSE(try_decode_image("definitely not an image"));
    CHECK_FALSE(try_decode_image(jpeg.substr(0, jpeg.size() / 3)));
    CHECK_THROWS_AS(decode_image(""), ImageDecodeError);
    CHECK_THROWS_AS(Raster(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(Raster(2, 2, std::vector<Rgb>(3)), std::invalid_argument);
}
