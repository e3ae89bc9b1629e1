#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pipetrack {

/// Row-major 8-bit raster with `Channels` interleaved samples per pixel.
/// `Tag` keeps gray and binary rasters from being mixed up at call sites.
template <class Tag, int Channels = 1>
class Raster {
public:
    static constexpr int channels = Channels;

    Raster() = default;
    Raster(int width, int height, std::uint8_t fill = 0);
    Raster(int width, int height, std::vector<std::uint8_t> samples);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }
    bool empty() const noexcept { return samples_.empty(); }

    std::uint8_t &at(int row, int col, int channel = 0) noexcept {
        return samples_[index(row, col) + static_cast<std::size_t>(channel)];
    }
    std::uint8_t at(int row, int col, int channel = 0) const noexcept {
        return samples_[index(row, col) + static_cast<std::size_t>(channel)];
    }

    std::span<std::uint8_t> row(int r) noexcept {
        return {samples_.data() + index(r, 0), static_cast<std::size_t>(width_) * Channels};
    }
    std::span<const std::uint8_t> row(int r) const noexcept {
        return {samples_.data() + index(r, 0), static_cast<std::size_t>(width_) * Channels};
    }

    std::span<std::uint8_t> samples() noexcept { return samples_; }
    std::span<const std::uint8_t> samples() const noexcept { return samples_; }

    friend bool operator==(const Raster &, const Raster &) = default;

private:
    std::size_t index(int r, int c) const noexcept {
        return (static_cast<std::size_t>(r) * static_cast<std::size_t>(width_) +
                static_cast<std::size_t>(c)) * Channels;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> samples_;
};

struct RgbTag;
struct GrayTag;
struct BinaryTag;

using RgbImage = Raster<RgbTag, 3>;
using GrayImage = Raster<GrayTag, 1>;
/// Every sample is 0 or 1.
using BinaryImage = Raster<BinaryTag, 1>;

extern template class Raster<RgbTag, 3>;
extern template class Raster<GrayTag, 1>;
extern template class Raster<BinaryTag, 1>;

}  // namespace pipetrack
