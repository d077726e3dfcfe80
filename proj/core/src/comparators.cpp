#include "camscout/digest.hpp"
#include "camscout/liveness.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>

namespace camscout {

bool checksum_compare(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    return sha256_hex(a) == sha256_hex(b);
}

namespace {

void require_same_dimensions(const Raster& a, const Raster& b) {
    if (!a.same_dimensions(b))
        throw DimensionMismatch("raster dimensions differ: " + std::to_string(a.width()) + "x" +
                                std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                                "x" + std::to_string(b.height()));
}

}  // namespace

double percent_diff(const Raster& a, const Raster& b, int channel_tolerance) {
    require_same_dimensions(a, b);
    if (a.empty()) return 0.0;
    std::size_t changed = 0;
    const auto& pa = a.pixels();
    const auto& pb = b.pixels();
    for (std::size_t i = 0; i < pa.size(); ++i) {
        const int dr = std::abs(int(pa[i].r) - int(pb[i].r));
        const int dg = std::abs(int(pa[i].g) - int(pb[i].g));
        const int db = std::abs(int(pa[i].b) - int(pb[i].b));
        if (dr > channel_tolerance || dg > channel_tolerance || db > channel_tolerance) ++changed;
    }
    return static_cast<double>(changed) / static_cast<double>(pa.size());
}

double mean_luminance(const Raster& raster) {
    if (raster.empty()) return 0.0;
    // Weights scaled by 1000 keep the accumulation exact.
    std::uint64_t total = 0;
    for (const auto& p : raster.pixels())
        total += 299u * p.r + 587u * p.g + 114u * p.b;
    return static_cast<double>(total) / (1000.0 * static_cast<double>(raster.size()));
}

double luminance_diff(const Raster& a, const Raster& b) {
    require_same_dimensions(a, b);
    return std::fabs(mean_luminance(a) - mean_luminance(b));
}

}  // namespace camscout
