#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pipetrack/features.hpp"
#include "pipetrack/fis.hpp"
#include "pipetrack/scenario.hpp"

namespace pipetrack::sim {

/// Turn by gain * (steer - 90) degrees, then advance one step. Throws
/// EnvelopeExit if the new position leaves the working area and
/// InvalidParameter if steer lies outside [0, 180].
AuvState step_auv(const AuvState &state, double steer, const Scenario &scenario);

/// Round half away from zero to `decimals` places, with a 1e-9 guard so
/// decimal ties such as 46.25 stored as 46.2499999... still round up.
double round_half_up(double value, int decimals);

/// 100 |drift| / tolerance to one decimal, computed from the drift as
/// reported (rounded to 0.1 cm).
double percent_of_drift(double drift_cm, double tolerance_cm);

struct PathPoint {
    int step = 0;
    double actual_x = 0.0;     // pipeline centreline at the vehicle's y
    double simulated_x = 0.0;  // vehicle x
    double drift = 0.0;        // simulated - actual, signed, unrounded
    double pct_drift = 0.0;

    friend bool operator==(const PathPoint &, const PathPoint &) = default;
};

struct PathRecord {
    std::vector<PathPoint> points;
    double tolerance = kDefaultTolerance;

    bool within_tolerance() const;
    double max_abs_drift() const;
    double mean_abs_drift() const;

    friend bool operator==(const PathRecord &, const PathRecord &) = default;
};

/// Drift of each recorded pose from the pipeline, numbered from step 1.
/// Throws OutOfRange for a pose outside the pipeline's y span and
/// InvalidParameter for a non-positive tolerance.
PathRecord drift_metrics(const std::vector<AuvState> &path, const World &world,
                         double tolerance = kDefaultTolerance);

/// `step,actual_x_cm,sim_x_cm,drift_cm,pct_drift`, one decimal, signed drift.
void write_path_csv(std::ostream &out, const PathRecord &record);
std::string path_csv(const PathRecord &record);

/// Parses the CSV above. Throws ParseError on a wrong header, malformed
/// row, or an empty body.
PathRecord read_path_csv(std::istream &in, const std::string &source = "",
                         double tolerance = kDefaultTolerance);

enum class Mode { sequential, overlapped };

enum class MissionStatus { completed, no_object, envelope_exit, step_limit };

/// Missions are cut off after this many steps per envelope perimeter length.
inline constexpr double kStepLimitFactor = 4.0;

struct CaptureTrace {
    AuvState pose;
    std::size_t first_step = 0;  // index of the first step it steers
    std::vector<FeatureVector> features;
    std::vector<double> steering;
};

struct MissionReport {
    MissionStatus status = MissionStatus::completed;
    std::string failure;  // diagnostic when status != completed
    std::vector<AuvState> path;  // pose after each step
    PathRecord record;
    std::vector<CaptureTrace> captures;

    bool completed() const noexcept { return status == MissionStatus::completed; }
};

/// Closed-loop mission. Each capture renders the view, extracts the five
/// band features and infers one steering command per band; the next
/// `steps_per_image` steps use them bottom band first (steps past the fifth
/// reuse the top band). Stops when the next step could pass the pipeline's
/// far end. Overlapped mode prepares the next capture on a worker thread
/// while the current steps are executed; its report is identical to
/// sequential mode.
MissionReport run_mission(const Scenario &scenario, const fis::RuleBase &rb, Mode mode = Mode::sequential,
                          double tolerance = kDefaultTolerance);

}  // namespace pipetrack::sim
