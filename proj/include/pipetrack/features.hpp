#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pipetrack/image.hpp"
#include "pipetrack/imgproc.hpp"

namespace pipetrack {

/// Half-open pixel rectangle.
struct Rect {
    int row = 0;
    int col = 0;
    int rows = 0;
    int cols = 0;

    std::int64_t pixel_count() const noexcept {
        return static_cast<std::int64_t>(rows) * static_cast<std::int64_t>(cols);
    }
    friend bool operator==(const Rect &, const Rect &) = default;
};

/// One horizontal image strip and its six sub-segments: 1-4 are the
/// quadrants (upper-left, upper-right, lower-left, lower-right), 5 the upper
/// half and 6 the lower half. `sub_segment(k)` is 1-based.
struct BandLayout {
    int band_index = 1;  // 1 = bottom of the image
    int first_row = 0;
    int last_row = 0;
    std::array<Rect, 6> sub_segments{};

    const Rect &sub_segment(int k) const { return sub_segments.at(static_cast<std::size_t>(k - 1)); }
    int width() const noexcept { return sub_segments[4].cols; }
};

inline constexpr int kBandCount = 5;
inline constexpr double kUniverseLow = 0.1;
inline constexpr double kUniverseHigh = 1.0;
inline constexpr double kNeutralLocation = 0.55;

/// The six controller inputs measured over one band. x1..x4 are quadrant
/// coverages, x5/x6 the pipe's horizontal location in the upper (far) and
/// lower (near) halves. All lie in [0.1, 1.0].
struct FeatureVector {
    std::array<double, 6> x{0.1, 0.1, 0.1, 0.1, kNeutralLocation, kNeutralLocation};
    int band_index = 1;

    double operator[](std::size_t i) const { return x[i]; }
    /// Signed offset of the far end from the image centre line.
    double far_end_offset() const noexcept { return x[4] - kNeutralLocation; }

    friend bool operator==(const FeatureVector &, const FeatureVector &) = default;
};

/// Left-right reflection of the measurement: swaps x1/x2 and x3/x4 and maps
/// the locations through 1.1 - x.
FeatureVector mirror(const FeatureVector &v);

/// Five equal bands ordered bottom to top; the top band absorbs any
/// remainder rows. Throws ImageTooSmall for height < 5 or width < 2.
std::vector<BandLayout> split_bands(int width, int height);

/// Coverage of quadrants 1-4, mapped onto [0.1, 1.0].
std::array<double, 4> coverage_fractions(const BinaryImage &object, const BandLayout &band);

/// Column centroids of the object in sub-segments 5 and 6, mapped onto
/// [0.1, 1.0]. An empty half reads as the neutral 0.55.
std::array<double, 2> line_locations(const BinaryImage &object, const BandLayout &band);

FeatureVector band_features(const BinaryImage &object, const BandLayout &band);

/// Threshold, label, drop regions under `min_area`, keep the largest region.
/// Throws NoObject when nothing survives.
BinaryImage object_of_interest(const GrayImage &img, const ThresholdBand &band, std::int64_t min_area);

/// One vector per band, bottom band first.
std::vector<FeatureVector> extract_features(const GrayImage &img, const ThresholdBand &band,
                                            std::int64_t min_area = kDefaultMinArea);

}  // namespace pipetrack
