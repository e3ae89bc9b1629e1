#include <cstdint>

#include "pipetrack/kernels.hpp"

namespace pipetrack::kernels {

namespace {

void gray_from_rgb_scalar(std::span<const std::uint8_t> rgb, std::span<std::uint8_t> gray) {
    for (std::size_t i = 0; i < gray.size(); ++i) {
        const std::uint32_t r = rgb[3 * i];
        const std::uint32_t g = rgb[3 * i + 1];
        const std::uint32_t b = rgb[3 * i + 2];
        gray[i] = static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
    }
}

void threshold_band_scalar(std::span<const std::uint8_t> src, std::span<std::uint8_t> dst,
                           std::uint8_t t1, std::uint8_t t2) {
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = (src[i] > t1 && src[i] <= t2) ? 1 : 0;
    }
}

std::uint64_t sum_bytes_scalar(std::span<const std::uint8_t> src) {
    std::uint64_t total = 0;
    for (std::uint8_t v : src) total += v;
    return total;
}

std::uint64_t index_moment_scalar(std::span<const std::uint8_t> src) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < src.size(); ++i) total += i * src[i];
    return total;
}

}  // namespace

const KernelTable &scalar_kernels() noexcept {
    static const KernelTable table{
        "scalar", gray_from_rgb_scalar, threshold_band_scalar, sum_bytes_scalar,
        index_moment_scalar,
    };
    return table;
}

}  // namespace pipetrack::kernels
