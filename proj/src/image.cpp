#include "pipetrack/image.hpp"

#include <string>
#include <type_traits>

#include "pipetrack/error.hpp"

namespace pipetrack {

namespace {

void check_dimensions(int width, int height) {
    if (width < 1 || height < 1) {
        throw InvalidParameter("image dimensions must be positive, got " + std::to_string(width) +
                               "x" + std::to_string(height));
    }
}

}  // namespace

template <class Tag, int Channels>
Raster<Tag, Channels>::Raster(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
    check_dimensions(width, height);
    samples_.assign(pixel_count() * Channels, fill);
}

template <class Tag, int Channels>
Raster<Tag, Channels>::Raster(int width, int height, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
    check_dimensions(width, height);
    if (samples_.size() != pixel_count() * Channels) {
        throw InvalidParameter("sample buffer holds " + std::to_string(samples_.size()) +
                               " values, expected " + std::to_string(pixel_count() * Channels));
    }
    if constexpr (std::is_same_v<Tag, BinaryTag>) {
        for (std::uint8_t v : samples_) {
            if (v > 1) throw InvalidParameter("binary image sample outside {0,1}");
        }
    }
}

template class Raster<RgbTag, 3>;
template class Raster<GrayTag, 1>;
template class Raster<BinaryTag, 1>;

}  // namespace pipetrack
