#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pipetrack/image.hpp"

namespace pipetrack::sim {

/// Seabed coordinates in centimetres: x across the envelope, y along it.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2 &, const Point2 &) = default;
};

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct World {
    double envelope_x = 150.0;
    double envelope_y = 200.0;
    std::vector<Point2> pipeline;  // strictly increasing y
    double pipe_width = 10.0;      // 0 draws no pipe
    std::uint64_t seed = 1;

    bool inside(double x, double y) const noexcept {
        return x >= 0.0 && x <= envelope_x && y >= 0.0 && y <= envelope_y;
    }
};

/// Throws InvalidParameter when the invariants above are violated.
void validate(const World &world);

/// Pipeline centreline x at `y`, interpolating linearly between waypoints.
/// Throws OutOfRange outside the pipeline's y span.
double pipeline_x_at(const World &world, double y);

/// Vehicle pose. heading is in degrees: 90 points along +y and larger
/// values turn toward +x.
struct AuvState {
    double x = 0.0;
    double y = 0.0;
    double heading = 90.0;

    friend bool operator==(const AuvState &, const AuvState &) = default;
};

struct CameraModel {
    double height_cm = 40.0;  // above the seabed
    double tilt_deg = 30.0;   // below the horizontal
    double fov_deg = 60.0;    // horizontal
    int image_width = 320;
    int image_height = 240;
    int pipe_intensity = 220;
    int seabed_intensity = 80;
    int noise_amplitude = 30;       // uniform, +/- intensity units
    double speckle_density = 0.005; // bright speckles per pixel
};

void validate(const CameraModel &camera);

struct PixelCoord {
    double col = 0.0;
    double row = 0.0;
};

/// Forward-looking pinhole camera mounted on the vehicle and tilted down.
/// Pixel (c, r) covers [c, c+1) x [r, r+1); the principal point is the
/// image centre (width/2, height/2).
class PinholeView {
public:
    PinholeView(const AuvState &pose, const CameraModel &camera);

    /// Image position of a world point; empty when it is behind the camera.
    std::optional<PixelCoord> project(const Point3 &p) const;

    /// Seabed point seen through the centre of pixel (col, row); empty when
    /// the ray does not reach the seabed.
    std::optional<Point2> seabed_point(int col, int row) const;

    const Point3 &position() const noexcept { return position_; }

private:
    Point3 position_;
    Point3 forward_;  // optical axis
    Point3 right_;
    Point3 up_;
    double focal_px_ = 1.0;
    double cx_ = 0.0;
    double cy_ = 0.0;
};

/// Perspective view of the pipe on a noisy seabed. Noise and speckles come
/// from a generator seeded by (world.seed, step_index), so identical inputs
/// give identical pixels.
GrayImage render_view(const World &world, const AuvState &pose, const CameraModel &camera,
                      std::uint64_t step_index);

}  // namespace pipetrack::sim
