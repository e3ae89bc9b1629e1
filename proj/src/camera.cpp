#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "pipetrack/error.hpp"
#include "pipetrack/world.hpp"

namespace pipetrack::sim {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

Point3 add(const Point3 &a, const Point3 &b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Point3 sub(const Point3 &a, const Point3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Point3 scale(const Point3 &a, double s) { return {a.x * s, a.y * s, a.z * s}; }
double dot(const Point3 &a, const Point3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

double distance_to_segment(const Point2 &p, const Point2 &a, const Point2 &b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double ex = p.x - (a.x + t * dx);
    const double ey = p.y - (a.y + t * dy);
    return std::sqrt(ex * ex + ey * ey);
}

}  // namespace

void validate(const World &world) {
    if (!(world.envelope_x > 0.0 && world.envelope_y > 0.0)) {
        throw InvalidParameter("envelope dimensions must be positive");
    }
    if (world.pipeline.size() < 2) throw InvalidParameter("pipeline needs at least two waypoints");
    if (!(world.pipe_width >= 0.0)) throw InvalidParameter("pipe width must be non-negative");
    for (std::size_t i = 0; i < world.pipeline.size(); ++i) {
        const Point2 &p = world.pipeline[i];
        if (!world.inside(p.x, p.y)) {
            throw InvalidParameter("pipeline waypoint " + std::to_string(i + 1) + " lies outside the envelope");
        }
        if (i > 0 && !(p.y > world.pipeline[i - 1].y)) {
            throw InvalidParameter("pipeline waypoints must have strictly increasing y");
        }
    }
}

double pipeline_x_at(const World &world, double y) {
    const auto &pts = world.pipeline;
    if (pts.size() < 2 || y < pts.front().y || y > pts.back().y) {
        throw OutOfRange("y = " + std::to_string(y) + " cm lies outside the pipeline's span");
    }
    const auto upper = std::upper_bound(pts.begin(), pts.end(), y,
                                        [](double v, const Point2 &p) { return v < p.y; });
    if (upper == pts.end()) return pts.back().x;
    const Point2 &b = *upper;
    const Point2 &a = *(upper - 1);
    const double t = (y - a.y) / (b.y - a.y);
    return a.x + t * (b.x - a.x);
}

void validate(const CameraModel &c) {
    auto intensity_ok = [](int v) { return v >= 0 && v <= 255; };
    if (!(c.height_cm > 0.0)) throw InvalidParameter("camera height must be positive");
    if (!(c.tilt_deg > 0.0 && c.tilt_deg < 90.0)) throw InvalidParameter("camera tilt must lie in (0, 90)");
    if (!(c.fov_deg > 10.0 && c.fov_deg < 170.0)) throw InvalidParameter("camera fov must lie in (10, 170)");
    if (c.image_width < 2 || c.image_height < 5) throw InvalidParameter("camera image is too small");
    if (!intensity_ok(c.pipe_intensity) || !intensity_ok(c.seabed_intensity)) {
        throw InvalidParameter("intensities must lie in 0..255");
    }
    if (c.noise_amplitude < 0 || c.noise_amplitude > 255) throw InvalidParameter("noise amplitude must lie in 0..255");
    if (!(c.speckle_density >= 0.0 && c.speckle_density <= 1.0)) {
        throw InvalidParameter("speckle density must lie in [0, 1]");
    }
}

PinholeView::PinholeView(const AuvState &pose, const CameraModel &camera) {
    const double h = pose.heading * kDegToRad;
    const double tilt = camera.tilt_deg * kDegToRad;
    const Point3 ahead{-std::cos(h), std::sin(h), 0.0};
    const Point3 up_world{0.0, 0.0, 1.0};
    position_ = {pose.x, pose.y, camera.height_cm};
    right_ = {std::sin(h), std::cos(h), 0.0};
    forward_ = add(scale(ahead, std::cos(tilt)), scale(up_world, -std::sin(tilt)));
    up_ = add(scale(ahead, std::sin(tilt)), scale(up_world, std::cos(tilt)));
    focal_px_ = 0.5 * camera.image_width / std::tan(0.5 * camera.fov_deg * kDegToRad);
    cx_ = 0.5 * camera.image_width;
    cy_ = 0.5 * camera.image_height;
}

std::optional<PixelCoord> PinholeView::project(const Point3 &p) const {
    const Point3 d = sub(p, position_);
    const double depth = dot(d, forward_);
    if (depth <= 0.0) return std::nullopt;
    return PixelCoord{cx_ + focal_px_ * dot(d, right_) / depth, cy_ - focal_px_ * dot(d, up_) / depth};
}

std::optional<Point2> PinholeView::seabed_point(int col, int row) const {
    const double u = col + 0.5 - cx_;
    const double v = row + 0.5 - cy_;
    const Point3 ray = add(add(scale(forward_, focal_px_), scale(right_, u)), scale(up_, -v));
    if (ray.z >= 0.0) return std::nullopt;
    const double t = -position_.z / ray.z;
    return Point2{position_.x + t * ray.x, position_.y + t * ray.y};
}

GrayImage render_view(const World &world, const AuvState &pose, const CameraModel &camera,
                      std::uint64_t step_index) {
    validate(camera);
    const PinholeView view(pose, camera);
    const int w = camera.image_width;
    const int h = camera.image_height;
    GrayImage img(w, h);

    const double half_width = 0.5 * world.pipe_width;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            int value = camera.seabed_intensity;
            if (half_width > 0.0) {
                if (const auto ground = view.seabed_point(c, r)) {
                    for (std::size_t i = 1; i < world.pipeline.size(); ++i) {
                        if (distance_to_segment(*ground, world.pipeline[i - 1], world.pipeline[i]) <= half_width) {
                            value = camera.pipe_intensity;
                            break;
                        }
                    }
                }
            }
            img.at(r, c) = static_cast<std::uint8_t>(value);
        }
    }

    // Raw engine output only: the distribution adaptors are not specified
    // bit-for-bit across standard libraries.
    std::seed_seq seq{static_cast<std::uint32_t>(world.seed), static_cast<std::uint32_t>(world.seed >> 32),
                      static_cast<std::uint32_t>(step_index), static_cast<std::uint32_t>(step_index >> 32)};
    std::mt19937_64 rng(seq);
    const int amplitude = camera.noise_amplitude;
    if (amplitude > 0) {
        const std::uint64_t span = 2 * static_cast<std::uint64_t>(amplitude) + 1;
        for (auto &px : img.samples()) {
            const int noisy = px + static_cast<int>(rng() % span) - amplitude;
            px = static_cast<std::uint8_t>(std::clamp(noisy, 0, 255));
        }
    }

    // Speckles: small bright plus-shaped blobs, well under the default
    // minimum region area.
    const auto speckles = static_cast<std::uint64_t>(std::llround(camera.speckle_density * w * h));
    for (std::uint64_t s = 0; s < speckles; ++s) {
        const int r0 = static_cast<int>(rng() % static_cast<std::uint64_t>(h));
        const int c0 = static_cast<int>(rng() % static_cast<std::uint64_t>(w));
        constexpr int offsets[5][2] = {{0, 0}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}};
        for (const auto &o : offsets) {
            const int r = r0 + o[0];
            const int c = c0 + o[1];
            if (r >= 0 && r < h && c >= 0 && c < w) img.at(r, c) = 255;
        }
    }
    return img;
}

}  // namespace pipetrack::sim
