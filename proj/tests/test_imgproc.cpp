#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "pipetrack/error.hpp"
#include "pipetrack/imgproc.hpp"
#include "pipetrack/netpbm.hpp"

using namespace pipetrack;

namespace {

BinaryImage from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    const int h = static_cast<int>(rows.size());
    const int w = static_cast<int>(rows.begin()->size());
    BinaryImage b(w, h);
    int r = 0;
    for (const auto &row : rows) {
        int c = 0;
        for (int v : row) b.at(r, c++) = static_cast<std::uint8_t>(v);
        ++r;
    }
    return b;
}

// Same partition and same raster-order numbering as the flood-fill oracle.
bool matches_oracle(const BinaryImage &b) {
    const LabelMap lm = label_regions(b);
    const oracle::FloodLabels expected = oracle::flood_fill(b);
    if (lm.region_count() != expected.count) return false;
    for (std::size_t i = 0; i < expected.labels.size(); ++i) {
        if (lm.labels()[i] != expected.labels[i]) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("rgb_to_gray") {
    RgbImage img(3, 1, std::vector<std::uint8_t>{100, 100, 100, 0, 0, 0, 255, 0, 0});
    const GrayImage g = rgb_to_gray(img);
    CHECK(g.width() == 3);
    CHECK(g.height() == 1);
    CHECK(g.at(0, 0) == 100);
    CHECK(g.at(0, 1) == 0);
    CHECK(g.at(0, 2) == 76);
}

TEST_CASE("threshold_band bounds") {
    GrayImage g(4, 1, std::vector<std::uint8_t>{99, 100, 150, 200});
    const BinaryImage b = threshold_band(g, {100, 200});
    CHECK(b.at(0, 0) == 0);
    CHECK(b.at(0, 1) == 0);  // F = t1 is excluded
    CHECK(b.at(0, 2) == 1);
    CHECK(b.at(0, 3) == 1);  // F = t2 is included

    CHECK_THROWS_AS(threshold_band(g, {200, 200}), InvalidThreshold);
    CHECK_THROWS_AS(threshold_band(g, {201, 200}), InvalidThreshold);
    CHECK_THROWS_AS(threshold_band(g, {-1, 200}), InvalidThreshold);
}

TEST_CASE("threshold_band and area against per-pixel oracles") {
    std::mt19937 rng(42);
    for (int i = 0; i < 200; ++i) {
        const GrayImage g = oracle::random_gray(rng, 16, 16);
        const std::vector<std::uint8_t> raw(g.samples().begin(), g.samples().end());
        const BinaryImage b = threshold_band(g, {100, 200});
        const auto expected = oracle::threshold(raw, 100, 200);
        REQUIRE(std::equal(expected.begin(), expected.end(), b.samples().begin()));
        REQUIRE(area(b) == oracle::count(b));
    }
}

TEST_CASE("threshold output is binary and a second (0,1] pass keeps it") {
    std::mt19937 rng(3);
    const GrayImage g = oracle::random_gray(rng, 16, 16);
    const BinaryImage b = threshold_band(g, {50, 180});
    for (auto v : b.samples()) REQUIRE((v == 0 || v == 1));
    const GrayImage as_gray(b.width(), b.height(), std::vector<std::uint8_t>(b.samples().begin(), b.samples().end()));
    CHECK(threshold_band(as_gray, {0, 1}) == b);
}

TEST_CASE("area is monotone in the band edges") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const GrayImage g = oracle::random_gray(rng, 16, 16);
        std::int64_t previous = area(threshold_band(g, {0, 255}));
        for (int t1 = 1; t1 < 255; ++t1) {
            const std::int64_t a = area(threshold_band(g, {t1, 255}));
            REQUIRE(a <= previous);
            previous = a;
        }
        previous = area(threshold_band(g, {0, 1}));
        for (int t2 = 2; t2 <= 255; ++t2) {
            const std::int64_t a = area(threshold_band(g, {0, t2}));
            REQUIRE(a >= previous);
            previous = a;
        }
    }
}

TEST_CASE("area examples") {
    CHECK(area(BinaryImage(4, 5, 1)) == 20);
    CHECK(area(BinaryImage(4, 5, 0)) == 0);
}

TEST_CASE("label_regions examples") {
    CHECK(label_regions(BinaryImage(5, 5, 0)).region_count() == 0);
    const LabelMap diag = label_regions(from_rows({{1, 0}, {0, 1}}));
    CHECK(diag.region_count() == 1);
    const LabelMap anti = label_regions(from_rows({{0, 1}, {1, 0}}));
    CHECK(anti.region_count() == 1);
    // Two separate blobs, numbered in raster order of their first pixel.
    const LabelMap two = label_regions(from_rows({{0, 0, 1}, {0, 0, 0}, {1, 0, 0}}));
    CHECK(two.region_count() == 2);
    CHECK(two.at(0, 2) == 1);
    CHECK(two.at(2, 0) == 2);
    // A U shape whose arms only merge on the bottom row.
    const LabelMap u = label_regions(from_rows({{1, 0, 1}, {1, 0, 1}, {1, 1, 1}}));
    CHECK(u.region_count() == 1);
}

TEST_CASE("label_regions equals flood fill on every image up to 4x4") {
    for (int h = 1; h <= 4; ++h) {
        for (int w = 1; w <= 4; ++w) {
            const int n = w * h;
            for (int mask = 0; mask < (1 << n); ++mask) {
                BinaryImage b(w, h);
                for (int i = 0; i < n; ++i) b.samples()[static_cast<std::size_t>(i)] = (mask >> i) & 1;
                if (!matches_oracle(b)) FAIL("mismatch for " << w << "x" << h << " mask " << mask);
            }
        }
    }
}

TEST_CASE("label_regions equals flood fill on random 16x16 images") {
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        const double density = 0.2 + 0.6 * (i % 10) / 10.0;
        REQUIRE(matches_oracle(oracle::random_binary(rng, 16, 16, density)));
    }
}

TEST_CASE("remove_small_regions") {
    std::mt19937 rng(5);
    SUBCASE("minArea 0 is the identity") {
        const LabelMap lm = label_regions(oracle::random_binary(rng, 16, 16, 0.4));
        CHECK(remove_small_regions(lm, 0) == lm);
    }
    SUBCASE("sizes {3, 50}") {
        BinaryImage b(20, 20);
        for (int c = 0; c < 3; ++c) b.at(0, c) = 1;
        for (int r = 5; r < 10; ++r) {
            for (int c = 5; c < 15; ++c) b.at(r, c) = 1;
        }
        const LabelMap kept = remove_small_regions(label_regions(b), 10);
        REQUIRE(kept.region_count() == 1);
        CHECK(region_stats(kept)[0].pixel_count == 50);
        CHECK(kept.at(0, 0) == 0);
        CHECK(kept.at(5, 5) == 1);
    }
    SUBCASE("matches a size filter over flood-fill components") {
        for (int i = 0; i < 50; ++i) {
            const BinaryImage b = oracle::random_binary(rng, 16, 16, 0.45);
            const auto flood = oracle::flood_fill(b);
            std::map<int, int> renumber;
            for (int l = 1; l <= flood.count; ++l) {
                if (flood.sizes[static_cast<std::size_t>(l - 1)] >= 25) {
                    const int next = static_cast<int>(renumber.size()) + 1;
                    renumber[l] = next;
                }
            }
            const LabelMap kept = remove_small_regions(label_regions(b), 25);
            REQUIRE(kept.region_count() == static_cast<int>(renumber.size()));
            for (std::size_t p = 0; p < flood.labels.size(); ++p) {
                const int l = flood.labels[p];
                const int expected = (l != 0 && renumber.count(l)) ? renumber[l] : 0;
                REQUIRE(kept.labels()[p] == expected);
            }
        }
    }
    CHECK_THROWS_AS(remove_small_regions(LabelMap(), -1), InvalidParameter);
}

TEST_CASE("largest_region") {
    SUBCASE("sizes {5, 9}") {
        BinaryImage b(12, 3);
        for (int c = 0; c < 5; ++c) b.at(0, c) = 1;
        for (int c = 0; c < 9; ++c) b.at(2, c) = 1;
        const auto region = largest_region(label_regions(b));
        REQUIRE(region);
        CHECK(region->pixel_count == 9);
        CHECK(region->label == 2);
        CHECK(region->bounding_box == BoundingBox{2, 0, 2, 8});
    }
    SUBCASE("ties go to the smaller label") {
        BinaryImage b(8, 3);
        for (int c = 0; c < 7; ++c) b.at(0, c) = 1;
        for (int c = 1; c < 8; ++c) b.at(2, c) = 1;
        const auto region = largest_region(label_regions(b));
        REQUIRE(region);
        CHECK(region->pixel_count == 7);
        CHECK(region->label == 1);
    }
    SUBCASE("empty map") { CHECK_FALSE(largest_region(label_regions(BinaryImage(3, 3, 0)))); }
}

TEST_CASE("largest region pixel set survives a row reversal") {
    std::mt19937 rng(21);
    int checked = 0;
    for (int i = 0; i < 300 && checked < 100; ++i) {
        const BinaryImage b = oracle::random_binary(rng, 16, 16, 0.45);
        const auto regions = region_stats(label_regions(b));
        if (regions.empty()) continue;
        std::vector<std::int64_t> sizes;
        for (const auto &r : regions) sizes.push_back(r.pixel_count);
        std::sort(sizes.rbegin(), sizes.rend());
        if (sizes.size() > 1 && sizes[0] == sizes[1]) continue;  // only unique maxima

        BinaryImage flipped(b.width(), b.height());
        for (int r = 0; r < b.height(); ++r) {
            for (int c = 0; c < b.width(); ++c) flipped.at(b.height() - 1 - r, c) = b.at(r, c);
        }
        const LabelMap original = label_regions(b);
        const LabelMap reversed = label_regions(flipped);
        const BinaryImage a = region_mask(original, largest_region(original)->label);
        const BinaryImage f = region_mask(reversed, largest_region(reversed)->label);
        for (int r = 0; r < b.height(); ++r) {
            for (int c = 0; c < b.width(); ++c) REQUIRE(a.at(r, c) == f.at(b.height() - 1 - r, c));
        }
        ++checked;
    }
    CHECK(checked >= 50);
}

TEST_CASE("region pixel counts equal the area of their masks") {
    std::mt19937 rng(8);
    const LabelMap lm = label_regions(oracle::random_binary(rng, 32, 32, 0.5));
    for (const Region &r : region_stats(lm)) CHECK(r.pixel_count == area(region_mask(lm, r.label)));
}

TEST_CASE("netpbm round trips and header handling") {
    std::mt19937 rng(1);
    const GrayImage g = oracle::random_gray(rng, 7, 5);
    std::stringstream pgm;
    netpbm::write_pgm(pgm, g);
    CHECK(netpbm::read_pgm(pgm) == g);

    RgbImage rgb(3, 2);
    for (std::size_t i = 0; i < rgb.samples().size(); ++i) rgb.samples()[i] = static_cast<std::uint8_t>(i * 13);
    std::stringstream ppm;
    netpbm::write_ppm(ppm, rgb);
    CHECK(netpbm::read_ppm(ppm) == rgb);

    BinaryImage b(3, 1, std::vector<std::uint8_t>{0, 1, 1});
    std::stringstream pbm;
    netpbm::write_pgm(pbm, b);
    const std::string bytes = pbm.str();
    CHECK(static_cast<unsigned char>(bytes[bytes.size() - 1]) == 255);
    CHECK(static_cast<unsigned char>(bytes[bytes.size() - 3]) == 0);
    std::stringstream back(bytes);
    CHECK(netpbm::read_binary_pgm(back) == b);

    std::stringstream commented("P5\n# made by hand\n2 1\n255\n\x10\x20");
    const GrayImage c = netpbm::read_pgm(commented);
    CHECK(c.at(0, 1) == 0x20);

    std::stringstream wrong_magic("P2\n1 1\n255\n0");
    CHECK_THROWS_AS(netpbm::read_pgm(wrong_magic), ParseError);
    std::stringstream wrong_maxval("P5\n1 1\n65535\n\0\0");
    CHECK_THROWS_AS(netpbm::read_pgm(wrong_maxval), ParseError);
    std::stringstream truncated("P6\n2 2\n255\nabc");
    CHECK_THROWS_AS(netpbm::read_ppm(truncated), ParseError);
}

TEST_CASE("raster invariants") {
    CHECK_THROWS_AS(GrayImage(0, 3), InvalidParameter);
    CHECK_THROWS_AS(GrayImage(2, 2, std::vector<std::uint8_t>(3)), InvalidParameter);
    CHECK_THROWS_AS(BinaryImage(2, 1, std::vector<std::uint8_t>{0, 2}), InvalidParameter);
}
