#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "pipetrack/fis.hpp"
#include "pipetrack/imgproc.hpp"
#include "pipetrack/world.hpp"

namespace pipetrack::sim {

inline constexpr double kDefaultStepLength = 22.5;
inline constexpr double kDefaultTolerance = 8.0;

/// Everything a mission needs apart from the rule base.
struct Scenario {
    World world;
    CameraModel camera;
    ThresholdBand thresholds;
    std::int64_t min_area = kDefaultMinArea;
    /// Rule file; empty means the built-in controller.
    std::filesystem::path rulebase_path;
    double steering_gain = 0.5;  // degrees of heading change per unit of (steer - 90)
    double step_length = kDefaultStepLength;
    int steps_per_image = 5;
    AuvState start;
};

/// Throws InvalidParameter on any broken invariant.
void validate(const Scenario &scenario);

/// The reference mission: a straight pipe through the x positions
/// 91.9, 80.8, 69.6, 58.5, 47.5 cm at y stations one step apart, preceded
/// by a lead-in waypoint, with the vehicle starting on the pipe.
Scenario default_scenario();

/// Line-based `key = value` format; `#` starts a comment. Unset keys keep
/// the default_scenario() values. A relative `rulebase` path is resolved
/// against `base_dir`. Throws ParseError naming the source and line.
Scenario parse_scenario(std::string_view text, const std::string &source = "",
                        const std::filesystem::path &base_dir = {});
Scenario load_scenario(const std::filesystem::path &path);

/// Writes every key, so parse_scenario(print_scenario(s)) == s.
std::string print_scenario(const Scenario &scenario);

/// The scenario's rule base: its rule file, or the built-in controller.
fis::RuleBase scenario_rulebase(const Scenario &scenario);

}  // namespace pipetrack::sim
