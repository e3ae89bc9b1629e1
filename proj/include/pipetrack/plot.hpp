#pragma once

#include <string>

#include "pipetrack/mission.hpp"

namespace pipetrack::sim {

struct PlotGeometry {
    double envelope_x = 150.0;
    double envelope_y = 200.0;
    double origin_y = 0.0;  // y of step 0
    double step_length = kDefaultStepLength;
};

/// Path plot in envelope coordinates: the envelope outline, the tolerance
/// band around the pipeline, the pipeline itself and one marker per path
/// point. Point k is drawn at y = origin_y + k * step_length, matching the
/// CSV, which carries no y column. Output depends only on the inputs.
std::string render_svg(const PathRecord &record, const PlotGeometry &geometry = {});

}  // namespace pipetrack::sim
