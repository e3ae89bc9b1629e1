#pragma once

// Brute-force reference implementations used only by the tests. They follow
// the definitions directly and share no code with the library's fast paths.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <vector>

#include "pipetrack/image.hpp"

namespace oracle {

inline int gray(int r, int g, int b) {
    // Exact rational rounding of 0.299 r + 0.587 g + 0.114 b, half up.
    const long num = 299L * r + 587L * g + 114L * b;  // value * 1000
    long q = num / 1000;
    if (num % 1000 >= 500) ++q;
    return static_cast<int>(q);
}

inline std::vector<std::uint8_t> threshold(const std::vector<std::uint8_t> &f, int t1, int t2) {
    std::vector<std::uint8_t> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = (t1 < f[i] && f[i] <= t2) ? 1 : 0;
    return out;
}

inline std::int64_t count(const pipetrack::BinaryImage &b) {
    std::int64_t n = 0;
    for (int r = 0; r < b.height(); ++r) {
        for (int c = 0; c < b.width(); ++c) n += b.at(r, c);
    }
    return n;
}

/// BFS flood fill with 8-connectivity, labels in raster order of first pixel.
struct FloodLabels {
    std::vector<int> labels;
    int count = 0;
    std::vector<std::int64_t> sizes;  // indexed by label - 1
};

inline FloodLabels flood_fill(const pipetrack::BinaryImage &b) {
    const int w = b.width();
    const int h = b.height();
    FloodLabels out;
    out.labels.assign(static_cast<std::size_t>(w * h), 0);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (b.at(r, c) == 0 || out.labels[static_cast<std::size_t>(r * w + c)] != 0) continue;
            const int label = ++out.count;
            std::int64_t size = 0;
            std::queue<std::pair<int, int>> q;
            q.push({r, c});
            out.labels[static_cast<std::size_t>(r * w + c)] = label;
            while (!q.empty()) {
                const auto [rr, cc] = q.front();
                q.pop();
                ++size;
                for (int dr = -1; dr <= 1; ++dr) {
                    for (int dc = -1; dc <= 1; ++dc) {
                        const int nr = rr + dr;
                        const int nc = cc + dc;
                        if (nr < 0 || nc < 0 || nr >= h || nc >= w) continue;
                        auto &l = out.labels[static_cast<std::size_t>(nr * w + nc)];
                        if (b.at(nr, nc) == 1 && l == 0) {
                            l = label;
                            q.push({nr, nc});
                        }
                    }
                }
            }
            out.sizes.push_back(size);
        }
    }
    return out;
}

inline pipetrack::BinaryImage random_binary(std::mt19937 &rng, int w, int h, double density) {
    pipetrack::BinaryImage b(w, h);
    std::bernoulli_distribution on(density);
    for (auto &v : b.samples()) v = on(rng) ? 1 : 0;
    return b;
}

inline pipetrack::GrayImage random_gray(std::mt19937 &rng, int w, int h) {
    pipetrack::GrayImage g(w, h);
    std::uniform_int_distribution<int> px(0, 255);
    for (auto &v : g.samples()) v = static_cast<std::uint8_t>(px(rng));
    return g;
}

/// Mean of (col + 0.5) over foreground pixels of the given rows, or -1.
inline double column_centroid(const pipetrack::BinaryImage &b, int first_row, int rows) {
    double sum = 0.0;
    long n = 0;
    for (int r = first_row; r < first_row + rows; ++r) {
        for (int c = 0; c < b.width(); ++c) {
            if (b.at(r, c)) {
                sum += c + 0.5;
                ++n;
            }
        }
    }
    return n == 0 ? -1.0 : sum / static_cast<double>(n);
}

// Membership shapes written straight from their definitions.
inline double gaussian(double x, double sigma, double c) {
    return std::exp(-(x - c) * (x - c) / (2 * sigma * sigma));
}

inline double s_curve(double x, double a, double c) {
    const double b = (a + c) / 2;
    if (x <= a) return 0;
    if (x <= b) return 2 * std::pow((x - a) / (c - a), 2);
    if (x <= c) return 1 - 2 * std::pow((x - c) / (c - a), 2);
    return 1;
}

inline double pi_curve(double x, double b, double c) {
    return x <= c ? s_curve(x, c - b, c) : 1 - s_curve(x, c, c + b);
}

/// The shipped 13-rule controller evaluated by hand: min conjunction and a
/// weighted mean of consequent centres 30 / 90 / 150.
inline double reference_controller(const std::array<double, 6> &x) {
    auto S = [](double v) { return gaussian(v, 0.19, 0.1); };
    auto M = [](double v) { return gaussian(v, 0.19, 0.55); };
    auto L = [](double v) { return gaussian(v, 0.19, 1.0); };
    auto Left = S;
    auto Center = M;
    auto Right = L;
    const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4], x6 = x[5];
    const double left[] = {
        std::min(Left(x5), Left(x6)),   std::min(Left(x5), Center(x6)), std::min(Left(x5), Right(x6)),
        std::min(L(x1), S(x2)),         std::min(L(x3), S(x4)),
        std::min({M(x1), S(x2), M(x3), S(x4)}),
    };
    const double right[] = {
        std::min(Right(x5), Right(x6)), std::min(Right(x5), Center(x6)), std::min(Right(x5), Left(x6)),
        std::min(L(x2), S(x1)),         std::min(L(x4), S(x3)),
        std::min({M(x2), S(x1), M(x4), S(x3)}),
    };
    const double straight = std::min(Center(x5), Center(x6));
    double num = 90 * straight;
    double den = straight;
    for (double a : left) {
        num += 30 * a;
        den += a;
    }
    for (double a : right) {
        num += 150 * a;
        den += a;
    }
    return den > 0 ? num / den : 90.0;
}

}  // namespace oracle
