// Compiled with -mavx2; only reached after the runtime CPUID check in
// kernels_dispatch.cpp.

#include <immintrin.h>

#include <cstdint>

#include "kernels_internal.hpp"

namespace pipetrack::kernels::detail {

namespace {

void gray_from_rgb_avx2(std::span<const std::uint8_t> rgb, std::span<std::uint8_t> gray) {
    const std::size_t n = gray.size();
    const auto *base = reinterpret_cast<const int *>(rgb.data());
    const __m256i offsets = _mm256_setr_epi32(0, 3, 6, 9, 12, 15, 18, 21);
    const __m256i byte_mask = _mm256_set1_epi32(0xFF);
    const __m256i wr = _mm256_set1_epi32(299);
    const __m256i wg = _mm256_set1_epi32(587);
    const __m256i wb = _mm256_set1_epi32(114);
    const __m256i half = _mm256_set1_epi32(500);
    const __m256 thousand = _mm256_set1_ps(1000.0f);

    // The gather reads four bytes per pixel, one past the blue sample, so
    // the last pixel of the buffer is left to the scalar tail.
    std::size_t i = 0;
    for (; i + 8 < n; i += 8) {
        const __m256i px = _mm256_i32gather_epi32(
            reinterpret_cast<const int *>(reinterpret_cast<const std::uint8_t *>(base) + 3 * i),
            offsets, 1);
        const __m256i r = _mm256_and_si256(px, byte_mask);
        const __m256i g = _mm256_and_si256(_mm256_srli_epi32(px, 8), byte_mask);
        const __m256i b = _mm256_and_si256(_mm256_srli_epi32(px, 16), byte_mask);
        __m256i sum = _mm256_add_epi32(_mm256_mullo_epi32(r, wr), _mm256_mullo_epi32(g, wg));
        sum = _mm256_add_epi32(sum, _mm256_add_epi32(_mm256_mullo_epi32(b, wb), half));
        // sum < 2^24 so the float conversion is exact, and a correctly rounded
        // quotient never crosses an integer boundary: truncation == floor(sum/1000).
        const __m256i q = _mm256_cvttps_epi32(_mm256_div_ps(_mm256_cvtepi32_ps(sum), thousand));
        const __m128i q16 = _mm_packus_epi32(_mm256_castsi256_si128(q), _mm256_extracti128_si256(q, 1));
        _mm_storel_epi64(reinterpret_cast<__m128i *>(gray.data() + i), _mm_packus_epi16(q16, q16));
    }
    for (; i < n; ++i) {
        const std::uint32_t r = rgb[3 * i];
        const std::uint32_t g = rgb[3 * i + 1];
        const std::uint32_t b = rgb[3 * i + 2];
        gray[i] = static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
    }
}

void threshold_band_avx2(std::span<const std::uint8_t> src, std::span<std::uint8_t> dst,
                         std::uint8_t t1, std::uint8_t t2) {
    const std::size_t n = src.size();
    // t1 < t2 <= 255, so t1 + 1 cannot wrap.
    const __m256i lo = _mm256_set1_epi8(static_cast<char>(t1 + 1));
    const __m256i hi = _mm256_set1_epi8(static_cast<char>(t2));
    const __m256i one = _mm256_set1_epi8(1);
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(src.data() + i));
        const __m256i above = _mm256_cmpeq_epi8(_mm256_max_epu8(x, lo), x);
        const __m256i below = _mm256_cmpeq_epi8(_mm256_min_epu8(x, hi), x);
        const __m256i in_band = _mm256_and_si256(_mm256_and_si256(above, below), one);
        _mm256_storeu_si256(reinterpret_cast<__m256i *>(dst.data() + i), in_band);
    }
    for (; i < n; ++i) dst[i] = (src[i] > t1 && src[i] <= t2) ? 1 : 0;
}

std::uint64_t horizontal_sum_epi64(__m256i v) {
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i *>(lanes), v);
    return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

std::uint64_t sum_bytes_avx2(std::span<const std::uint8_t> src) {
    const std::size_t n = src.size();
    const __m256i zero = _mm256_setzero_si256();
    __m256i acc = zero;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(src.data() + i));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(x, zero));
    }
    std::uint64_t total = horizontal_sum_epi64(acc);
    for (; i < n; ++i) total += src[i];
    return total;
}

std::uint64_t index_moment_avx2(std::span<const std::uint8_t> src) {
    const std::size_t n = src.size();
    const __m256i zero = _mm256_setzero_si256();
    const __m256i lane_index = _mm256_setr_epi8(0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15,
                                                16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28,
                                                29, 30, 31);
    const __m256i ones16 = _mm256_set1_epi16(1);
    std::uint64_t total = 0;
    std::size_t i = 0;
    // Per block: sum(i * x) = base * sum(x) + sum(lane * x). The lane term is
    // at most 32 * 31 * 255 per chunk, so 32-bit lanes are flushed every
    // 4096 chunks.
    while (i + 32 <= n) {
        __m256i lane_acc = zero;
        std::uint64_t weighted_base = 0;
        for (int chunk = 0; chunk < 4096 && i + 32 <= n; ++chunk, i += 32) {
            const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(src.data() + i));
            const __m256i pairs = _mm256_maddubs_epi16(x, lane_index);
            lane_acc = _mm256_add_epi32(lane_acc, _mm256_madd_epi16(pairs, ones16));
            const __m256i sums = _mm256_sad_epu8(x, zero);
            weighted_base += static_cast<std::uint64_t>(i) * horizontal_sum_epi64(sums);
        }
        alignas(32) std::int32_t lanes[8];
        _mm256_store_si256(reinterpret_cast<__m256i *>(lanes), lane_acc);
        for (std::int32_t v : lanes) total += static_cast<std::uint64_t>(v);
        total += weighted_base;
    }
    for (; i < n; ++i) total += i * src[i];
    return total;
}

}  // namespace

const KernelTable &avx2_table() noexcept {
    static const KernelTable table{
        "avx2", gray_from_rgb_avx2, threshold_band_avx2, sum_bytes_avx2, index_moment_avx2,
    };
    return table;
}

}  // namespace pipetrack::kernels::detail
