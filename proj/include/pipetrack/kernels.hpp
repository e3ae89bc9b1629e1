#pragma once

// Pixel inner loops. Every kernel has a scalar reference implementation and,
// on x86-64, an AVX2 variant; the two must agree bit for bit. The active
// table is picked once at startup from CPUID and can be pinned to the scalar
// path by setting PIPETRACK_KERNELS=scalar in the environment.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace pipetrack::kernels {

struct KernelTable {
    std::string_view name;

    /// Interleaved RGB triples to luma, (299 r + 587 g + 114 b + 500) / 1000.
    /// `gray.size()` pixels are converted; `rgb` must hold three times that.
    void (*gray_from_rgb)(std::span<const std::uint8_t> rgb, std::span<std::uint8_t> gray);

    /// dst[i] = 1 when t1 < src[i] <= t2, else 0.
    void (*threshold_band)(std::span<const std::uint8_t> src, std::span<std::uint8_t> dst,
                           std::uint8_t t1, std::uint8_t t2);

    /// Sum of the bytes; for 0/1 data this is the foreground count.
    std::uint64_t (*sum_bytes)(std::span<const std::uint8_t> src);

    /// Sum of i * src[i]; the first moment along a row of 0/1 data.
    std::uint64_t (*index_moment)(std::span<const std::uint8_t> src);
};

const KernelTable &scalar_kernels() noexcept;

/// Null when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelTable *avx2_kernels() noexcept;

/// The table used by the imaging code.
const KernelTable &active_kernels() noexcept;

}  // namespace pipetrack::kernels
