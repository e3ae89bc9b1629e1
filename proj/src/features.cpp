#include "pipetrack/features.hpp"

#include <string>

#include "pipetrack/error.hpp"
#include "pipetrack/kernels.hpp"

namespace pipetrack {

namespace {

double to_universe(double fraction) { return kUniverseLow + (kUniverseHigh - kUniverseLow) * fraction; }

struct Moments {
    std::uint64_t count = 0;
    std::uint64_t column_sum = 0;  // sum of column offsets from the rect's left edge
};

Moments rect_moments(const BinaryImage &object, const Rect &rect, bool with_columns) {
    const auto &k = kernels::active_kernels();
    Moments m;
    for (int r = rect.row; r < rect.row + rect.rows; ++r) {
        const auto span = object.row(r).subspan(static_cast<std::size_t>(rect.col),
                                                static_cast<std::size_t>(rect.cols));
        m.count += k.sum_bytes(span);
        if (with_columns) m.column_sum += k.index_moment(span);
    }
    return m;
}

void check_matches(const BinaryImage &object, const BandLayout &band) {
    if (band.width() != object.width() || band.last_row >= object.height()) {
        throw InvalidParameter("band layout does not fit the object mask");
    }
}

}  // namespace

FeatureVector mirror(const FeatureVector &v) {
    FeatureVector m = v;
    m.x = {v.x[1], v.x[0], v.x[3], v.x[2], 1.1 - v.x[4], 1.1 - v.x[5]};
    return m;
}

std::vector<BandLayout> split_bands(int width, int height) {
    if (height < kBandCount || width < 2) {
        throw ImageTooSmall("image of " + std::to_string(width) + "x" + std::to_string(height) +
                            " is too small for " + std::to_string(kBandCount) + " bands");
    }
    const int base = height / kBandCount;
    std::vector<BandLayout> bands;
    bands.reserve(kBandCount);
    for (int k = 1; k <= kBandCount; ++k) {
        BandLayout b;
        b.band_index = k;
        b.last_row = height - 1 - (k - 1) * base;
        b.first_row = k == kBandCount ? 0 : height - k * base;
        const int rows = b.last_row - b.first_row + 1;
        const int upper = rows / 2;
        const int left = width / 2;
        const Rect upper_left{b.first_row, 0, upper, left};
        const Rect upper_right{b.first_row, left, upper, width - left};
        const Rect lower_left{b.first_row + upper, 0, rows - upper, left};
        const Rect lower_right{b.first_row + upper, left, rows - upper, width - left};
        const Rect upper_half{b.first_row, 0, upper, width};
        const Rect lower_half{b.first_row + upper, 0, rows - upper, width};
        b.sub_segments = {upper_left, upper_right, lower_left, lower_right, upper_half, lower_half};
        bands.push_back(b);
    }
    return bands;
}

std::array<double, 4> coverage_fractions(const BinaryImage &object, const BandLayout &band) {
    check_matches(object, band);
    std::array<double, 4> u{};
    for (int q = 1; q <= 4; ++q) {
        const Rect &rect = band.sub_segment(q);
        const std::int64_t total = rect.pixel_count();
        const double fraction =
            total == 0 ? 0.0
                       : static_cast<double>(rect_moments(object, rect, false).count) / static_cast<double>(total);
        u[static_cast<std::size_t>(q - 1)] = to_universe(fraction);
    }
    return u;
}

std::array<double, 2> line_locations(const BinaryImage &object, const BandLayout &band) {
    check_matches(object, band);
    std::array<double, 2> loc{kNeutralLocation, kNeutralLocation};
    for (int s = 5; s <= 6; ++s) {
        const Rect &rect = band.sub_segment(s);
        const Moments m = rect_moments(object, rect, true);
        if (m.count == 0) continue;
        // Pixel centres sit at col + 0.5, so a mask symmetric about the
        // band's midline lands exactly on 0.55.
        const double centroid = rect.col + 0.5 +
                                static_cast<double>(m.column_sum) / static_cast<double>(m.count);
        loc[static_cast<std::size_t>(s - 5)] = to_universe(centroid / band.width());
    }
    return loc;
}

FeatureVector band_features(const BinaryImage &object, const BandLayout &band) {
    const auto u = coverage_fractions(object, band);
    const auto loc = line_locations(object, band);
    FeatureVector v;
    v.band_index = band.band_index;
    v.x = {u[0], u[1], u[2], u[3], loc[0], loc[1]};
    return v;
}

BinaryImage object_of_interest(const GrayImage &img, const ThresholdBand &band, std::int64_t min_area) {
    const LabelMap labels = remove_small_regions(label_regions(threshold_band(img, band)), min_area);
    const auto largest = largest_region(labels);
    if (!largest) throw NoObject("no-object: no region of at least " + std::to_string(min_area) +
                                 " pixels in the threshold band");
    return region_mask(labels, largest->label);
}

std::vector<FeatureVector> extract_features(const GrayImage &img, const ThresholdBand &band,
                                            std::int64_t min_area) {
    const auto layouts = split_bands(img.width(), img.height());
    const BinaryImage object = object_of_interest(img, band, min_area);
    std::vector<FeatureVector> out;
    out.reserve(layouts.size());
    for (const BandLayout &layout : layouts) out.push_back(band_features(object, layout));
    return out;
}

}  // namespace pipetrack
