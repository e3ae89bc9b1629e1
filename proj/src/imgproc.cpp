#include "pipetrack/imgproc.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "pipetrack/error.hpp"
#include "pipetrack/kernels.hpp"

namespace pipetrack {

void validate(const ThresholdBand &band) {
    if (band.t1 < 0 || band.t2 > 255 || band.t1 >= band.t2) {
        throw InvalidThreshold("threshold band requires 0 <= t1 < t2 <= 255, got (" +
                               std::to_string(band.t1) + ", " + std::to_string(band.t2) + ")");
    }
}

LabelMap::LabelMap(int width, int height, std::vector<std::int32_t> labels, int region_count)
    : width_(width), height_(height), labels_(std::move(labels)), region_count_(region_count) {
    if (labels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw InvalidParameter("label buffer size does not match dimensions");
    }
}

GrayImage rgb_to_gray(const RgbImage &img) {
    GrayImage gray(img.width(), img.height());
    kernels::active_kernels().gray_from_rgb(img.samples(), gray.samples());
    return gray;
}

BinaryImage threshold_band(const GrayImage &img, const ThresholdBand &band) {
    validate(band);
    BinaryImage out(img.width(), img.height());
    kernels::active_kernels().threshold_band(img.samples(), out.samples(),
                                             static_cast<std::uint8_t>(band.t1),
                                             static_cast<std::uint8_t>(band.t2));
    return out;
}

namespace {

class DisjointSet {
public:
    std::int32_t make() {
        parent_.push_back(static_cast<std::int32_t>(parent_.size()));
        return parent_.back();
    }

    std::int32_t find(std::int32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) std::swap(a, b);
        parent_[a] = b;
    }

private:
    std::vector<std::int32_t> parent_;
};

}  // namespace

LabelMap label_regions(const BinaryImage &img) {
    const int w = img.width();
    const int h = img.height();
    std::vector<std::int32_t> labels(img.pixel_count(), 0);
    DisjointSet sets;
    sets.make();  // provisional label 0 is background

    auto at = [&](int r, int c) -> std::int32_t & {
        return labels[static_cast<std::size_t>(r) * static_cast<std::size_t>(w) +
                      static_cast<std::size_t>(c)];
    };

    // First pass: provisional labels from the already-visited half of the
    // 8-neighbourhood (W, NW, N, NE), recording equivalences.
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (img.at(r, c) == 0) continue;
            std::int32_t assigned = 0;
            auto merge = [&](int rr, int cc) {
                if (rr < 0 || cc < 0 || cc >= w) return;
                const std::int32_t l = at(rr, cc);
                if (l == 0) return;
                if (assigned == 0) {
                    assigned = l;
                } else {
                    sets.unite(assigned, l);
                }
            };
            merge(r, c - 1);
            merge(r - 1, c - 1);
            merge(r - 1, c);
            merge(r - 1, c + 1);
            at(r, c) = assigned != 0 ? assigned : sets.make();
        }
    }

    // Second pass: resolve and renumber roots in raster order of first pixel.
    std::vector<std::int32_t> final_label;
    int count = 0;
    for (auto &l : labels) {
        if (l == 0) continue;
        const std::int32_t root = sets.find(l);
        if (static_cast<std::size_t>(root) >= final_label.size()) {
            final_label.resize(static_cast<std::size_t>(root) + 1, 0);
        }
        if (final_label[root] == 0) final_label[root] = ++count;
        l = final_label[root];
    }
    return LabelMap(w, h, std::move(labels), count);
}

std::vector<Region> region_stats(const LabelMap &labels) {
    std::vector<Region> regions(static_cast<std::size_t>(labels.region_count()));
    for (std::size_t i = 0; i < regions.size(); ++i) {
        regions[i].label = static_cast<int>(i) + 1;
        regions[i].bounding_box = {labels.height(), labels.width(), -1, -1};
    }
    for (int r = 0; r < labels.height(); ++r) {
        for (int c = 0; c < labels.width(); ++c) {
            const std::int32_t l = labels.at(r, c);
            if (l == 0) continue;
            Region &region = regions[static_cast<std::size_t>(l) - 1];
            ++region.pixel_count;
            BoundingBox &box = region.bounding_box;
            box.min_row = std::min(box.min_row, r);
            box.min_col = std::min(box.min_col, c);
            box.max_row = std::max(box.max_row, r);
            box.max_col = std::max(box.max_col, c);
        }
    }
    return regions;
}

LabelMap remove_small_regions(const LabelMap &labels, std::int64_t min_area) {
    if (min_area < 0) throw InvalidParameter("minimum area must be non-negative");
    const std::vector<Region> regions = region_stats(labels);
    std::vector<std::int32_t> remap(regions.size() + 1, 0);
    int kept = 0;
    for (const Region &region : regions) {
        if (region.pixel_count >= min_area) remap[static_cast<std::size_t>(region.label)] = ++kept;
    }
    std::vector<std::int32_t> out = labels.labels();
    for (auto &l : out) l = remap[static_cast<std::size_t>(l)];
    return LabelMap(labels.width(), labels.height(), std::move(out), kept);
}

std::optional<Region> largest_region(const LabelMap &labels) {
    const std::vector<Region> regions = region_stats(labels);
    if (regions.empty()) return std::nullopt;
    // max_element keeps the first of equal maxima, i.e. the smallest label.
    return *std::max_element(regions.begin(), regions.end(), [](const Region &a, const Region &b) {
        return a.pixel_count < b.pixel_count;
    });
}

BinaryImage region_mask(const LabelMap &labels, int label) {
    BinaryImage mask(labels.width(), labels.height());
    auto samples = mask.samples();
    const auto &ls = labels.labels();
    for (std::size_t i = 0; i < ls.size(); ++i) samples[i] = ls[i] == label ? 1 : 0;
    return mask;
}

std::int64_t area(const BinaryImage &img) {
    return static_cast<std::int64_t>(kernels::active_kernels().sum_bytes(img.samples()));
}

}  // namespace pipetrack
