#include "pipetrack/mission.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <future>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "pipetrack/error.hpp"

namespace pipetrack::sim {

AuvState step_auv(const AuvState &state, double steer, const Scenario &scenario) {
    if (!(steer >= 0.0 && steer <= 180.0)) {
        throw InvalidParameter("steering set point " + std::to_string(steer) + " lies outside [0, 180]");
    }
    AuvState next = state;
    next.heading = state.heading + scenario.steering_gain * (steer - fis::kStraightAhead);
    const double h = next.heading * std::numbers::pi / 180.0;
    next.x = state.x - std::cos(h) * scenario.step_length;
    next.y = state.y + std::sin(h) * scenario.step_length;
    if (!scenario.world.inside(next.x, next.y)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "envelope-exit: step to (%.1f, %.1f) cm leaves the working area", next.x,
                      next.y);
        throw EnvelopeExit(buf);
    }
    return next;
}

double round_half_up(double value, int decimals) {
    const double scale = std::pow(10.0, decimals);
    const double magnitude = std::floor(std::abs(value) * scale + 0.5 + 1e-9) / scale;
    return std::signbit(value) ? -magnitude : magnitude;
}

double percent_of_drift(double drift_cm, double tolerance_cm) {
    if (!(tolerance_cm > 0.0)) throw InvalidParameter("drift tolerance must be positive");
    const double reported = std::abs(round_half_up(drift_cm, 1));
    return round_half_up(100.0 * reported / tolerance_cm, 1);
}

bool PathRecord::within_tolerance() const {
    for (const PathPoint &p : points) {
        if (std::abs(p.drift) > tolerance) return false;
    }
    return true;
}

double PathRecord::max_abs_drift() const {
    double m = 0.0;
    for (const PathPoint &p : points) m = std::max(m, std::abs(p.drift));
    return m;
}

double PathRecord::mean_abs_drift() const {
    if (points.empty()) return 0.0;
    double sum = 0.0;
    for (const PathPoint &p : points) sum += std::abs(p.drift);
    return sum / static_cast<double>(points.size());
}

PathRecord drift_metrics(const std::vector<AuvState> &path, const World &world, double tolerance) {
    if (!(tolerance > 0.0)) throw InvalidParameter("drift tolerance must be positive");
    PathRecord record;
    record.tolerance = tolerance;
    for (std::size_t i = 0; i < path.size(); ++i) {
        PathPoint p;
        p.step = static_cast<int>(i) + 1;
        p.actual_x = pipeline_x_at(world, path[i].y);
        p.simulated_x = path[i].x;
        p.drift = p.simulated_x - p.actual_x;
        p.pct_drift = percent_of_drift(p.drift, tolerance);
        record.points.push_back(p);
    }
    return record;
}

namespace {

constexpr const char *kCsvHeader = "step,actual_x_cm,sim_x_cm,drift_cm,pct_drift";

std::string fixed1(double v) {
    char buf[64];
    const double r = round_half_up(v, 1);
    std::snprintf(buf, sizeof buf, "%.1f", r == 0.0 ? 0.0 : r);
    return buf;
}

std::string signed1(double v) {
    const double r = round_half_up(v, 1);
    if (r == 0.0) return "0.0";
    return (r > 0.0 ? "+" : "") + fixed1(r);
}

bool parse_double(const std::string &s, double &out) {
    if (s.empty()) return false;
    char *end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

}  // namespace

void write_path_csv(std::ostream &out, const PathRecord &record) {
    out << kCsvHeader << '\n';
    for (const PathPoint &p : record.points) {
        out << p.step << ',' << fixed1(p.actual_x) << ',' << fixed1(p.simulated_x) << ',' << signed1(p.drift) << ','
            << fixed1(p.pct_drift) << '\n';
    }
}

std::string path_csv(const PathRecord &record) {
    std::ostringstream out;
    write_path_csv(out, record);
    return out.str();
}

PathRecord read_path_csv(std::istream &in, const std::string &source, double tolerance) {
    std::string line;
    int number = 1;
    if (!std::getline(in, line)) throw ParseError(source, 1, "empty CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw ParseError(source, 1, std::string("expected header '") + kCsvHeader + "'");
    PathRecord record;
    record.tolerance = tolerance;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 5) throw ParseError(source, number, "expected 5 fields");
        PathPoint p;
        double step = 0.0;
        if (!parse_double(fields[0], step) || step != std::floor(step) || step < 1 ||
            !parse_double(fields[1], p.actual_x) || !parse_double(fields[2], p.simulated_x) ||
            !parse_double(fields[3], p.drift) || !parse_double(fields[4], p.pct_drift)) {
            throw ParseError(source, number, "malformed number");
        }
        p.step = static_cast<int>(step);
        record.points.push_back(p);
    }
    if (record.points.empty()) throw ParseError(source, number, "CSV has no data rows");
    return record;
}

namespace {

CaptureTrace capture(const Scenario &scenario, const fis::RuleBase &rb, const AuvState &pose,
                     std::size_t first_step) {
    CaptureTrace trace;
    trace.pose = pose;
    trace.first_step = first_step;
    const GrayImage view = render_view(scenario.world, pose, scenario.camera, first_step);
    trace.features = extract_features(view, scenario.thresholds, scenario.min_area);
    trace.steering.reserve(trace.features.size());
    for (const FeatureVector &v : trace.features) trace.steering.push_back(fis::infer(rb, v).output);
    return trace;
}

}  // namespace

MissionReport run_mission(const Scenario &scenario, const fis::RuleBase &rb, Mode mode, double tolerance) {
    validate(scenario);
    if (!(tolerance > 0.0)) throw InvalidParameter("drift tolerance must be positive");
    MissionReport report;
    const double far_end = scenario.world.pipeline.back().y;
    auto can_step = [&](const AuvState &s) { return s.y + scenario.step_length <= far_end; };
    const auto step_limit = static_cast<std::size_t>(std::ceil(
        kStepLimitFactor * 2.0 * (scenario.world.envelope_x + scenario.world.envelope_y) / scenario.step_length));

    AuvState state = scenario.start;
    auto finish = [&](MissionStatus status, std::string failure) {
        report.status = status;
        report.failure = std::move(failure);
        report.record = drift_metrics(report.path, scenario.world, tolerance);
        return report;
    };

    if (!can_step(state)) return finish(MissionStatus::completed, {});

    std::optional<CaptureTrace> current;
    try {
        current = capture(scenario, rb, state, 0);
    } catch (const NoObject &e) {
        return finish(MissionStatus::no_object, e.what());
    }

    while (true) {
        // Steps are a pure function of the steering commands, so the whole
        // batch can be planned before any of it is recorded.
        std::vector<AuvState> planned;
        std::string exit_failure;
        AuvState pose = state;
        for (int k = 0; k < scenario.steps_per_image && can_step(pose); ++k) {
            const std::size_t band = std::min<std::size_t>(static_cast<std::size_t>(k), current->steering.size() - 1);
            try {
                pose = step_auv(pose, current->steering[band], scenario);
            } catch (const EnvelopeExit &e) {
                exit_failure = e.what();
                break;
            }
            planned.push_back(pose);
        }
        const std::size_t next_first_step = report.path.size() + planned.size();
        const bool more = exit_failure.empty() && can_step(pose);

        std::future<CaptureTrace> next;
        if (mode == Mode::overlapped && more) {
            next = std::async(std::launch::async, capture, std::cref(scenario), std::cref(rb), pose, next_first_step);
        }

        report.captures.push_back(std::move(*current));
        for (const AuvState &p : planned) report.path.push_back(p);
        state = pose;

        if (!exit_failure.empty()) return finish(MissionStatus::envelope_exit, exit_failure);
        if (!more) return finish(MissionStatus::completed, {});
        if (report.path.size() >= step_limit) {
            if (next.valid()) next.wait();
            return finish(MissionStatus::step_limit,
                          "step-limit: far end not reached after " + std::to_string(report.path.size()) + " steps");
        }

        try {
            current = mode == Mode::overlapped ? next.get() : capture(scenario, rb, state, next_first_step);
        } catch (const NoObject &e) {
            return finish(MissionStatus::no_object, e.what());
        }
    }
}

}  // namespace pipetrack::sim
