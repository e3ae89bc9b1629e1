#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pipetrack/image.hpp"

namespace pipetrack {

/// Intensity band (t1, t2]; the lower bound is exclusive.
struct ThresholdBand {
    int t1 = 180;
    int t2 = 255;

    friend bool operator==(const ThresholdBand &, const ThresholdBand &) = default;
};

/// Throws InvalidThreshold unless 0 <= t1 < t2 <= 255.
void validate(const ThresholdBand &band);

/// 8-connected component labelling. Label 0 is background; regions are
/// numbered 1..region_count in raster order of their first pixel.
class LabelMap {
public:
    LabelMap() = default;
    LabelMap(int width, int height, std::vector<std::int32_t> labels, int region_count);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int region_count() const noexcept { return region_count_; }
    std::int32_t at(int row, int col) const noexcept {
        return labels_[static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
                       static_cast<std::size_t>(col)];
    }
    const std::vector<std::int32_t> &labels() const noexcept { return labels_; }

    friend bool operator==(const LabelMap &, const LabelMap &) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::int32_t> labels_;
    int region_count_ = 0;
};

struct BoundingBox {
    int min_row = 0;
    int min_col = 0;
    int max_row = 0;
    int max_col = 0;

    friend bool operator==(const BoundingBox &, const BoundingBox &) = default;
};

struct Region {
    int label = 0;
    std::int64_t pixel_count = 0;
    BoundingBox bounding_box;

    friend bool operator==(const Region &, const Region &) = default;
};

/// BT.601 luma, rounded half up: (299 r + 587 g + 114 b + 500) / 1000.
GrayImage rgb_to_gray(const RgbImage &img);

/// B = 1 where t1 < F <= t2.
BinaryImage threshold_band(const GrayImage &img, const ThresholdBand &band);

LabelMap label_regions(const BinaryImage &img);

/// Per-region statistics indexed by label - 1.
std::vector<Region> region_stats(const LabelMap &labels);

/// Drops regions smaller than `min_area` pixels and renumbers the survivors
/// consecutively, keeping their relative order.
LabelMap remove_small_regions(const LabelMap &labels, std::int64_t min_area);

/// Largest region; ties go to the smallest label. Empty when there are no regions.
std::optional<Region> largest_region(const LabelMap &labels);

/// Binary mask of the pixels carrying `label`.
BinaryImage region_mask(const LabelMap &labels, int label);

/// Number of foreground pixels.
std::int64_t area(const BinaryImage &img);

inline constexpr std::int64_t kDefaultMinArea = 25;

}  // namespace pipetrack
