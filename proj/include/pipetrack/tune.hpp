#pragma once

#include <functional>
#include <vector>

#include "pipetrack/fis.hpp"
#include "pipetrack/mission.hpp"
#include "pipetrack/scenario.hpp"

namespace pipetrack::sim {

/// Worst-case drift first, mean drift as the tie-break. Lower is better.
struct Objective {
    double max_abs_drift = 0.0;
    double mean_abs_drift = 0.0;

    friend bool operator==(const Objective &, const Objective &) = default;
};

bool better(const Objective &a, const Objective &b);

/// Added to the objective of a failed mission, ranking it below every
/// completed one.
inline constexpr double kFailurePenalty = 1e6;

Objective mission_objective(const std::vector<Scenario> &scenarios, const fis::RuleBase &rb,
                            double tolerance = kDefaultTolerance);

/// One tunable coordinate with its search step and bounds.
struct Coordinate {
    double value = 0.0;
    double step = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

struct SearchResult {
    std::vector<double> values;
    Objective objective;
    Objective initial;
    int evaluations = 0;
};

/// Coordinate descent: for each coordinate in turn try value +/- step and
/// keep the first strict improvement; after a sweep with no improvement
/// halve every step. Stops after `budget` objective evaluations (the
/// initial evaluation included) or once every step has shrunk below 1/64
/// of its starting size. Never returns a point worse than the start.
SearchResult coordinate_descent(const std::vector<Coordinate> &start,
                                const std::function<Objective(const std::vector<double> &)> &objective,
                                int budget);

struct TuneResult {
    fis::RuleBase tuned;
    Objective before;
    Objective after;
    int evaluations = 0;
};

/// Tunes every term centre and width of `init` against the scenarios.
/// Deterministic for fixed inputs. Throws InvalidParameter for budget < 1.
TuneResult tune(const std::vector<Scenario> &scenarios, const fis::RuleBase &init, int budget,
                double tolerance = kDefaultTolerance);

/// The reference rule base with every input term centre moved 0.2 to the
/// right (clamped to the universe).
fis::RuleBase detuned_rulebase();

}  // namespace pipetrack::sim
