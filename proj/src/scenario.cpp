#include "pipetrack/scenario.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "pipetrack/error.hpp"

namespace pipetrack::sim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

template <class T>
bool parse_value(std::string_view s, T &out) {
    s = trim(s);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::string format(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

void validate(const Scenario &s) {
    validate(s.world);
    validate(s.camera);
    validate(s.thresholds);
    if (s.min_area < 0) throw InvalidParameter("minArea must be non-negative");
    if (!(s.step_length > 0.0)) throw InvalidParameter("step length must be positive");
    if (s.steps_per_image < 1) throw InvalidParameter("steps per image must be at least 1");
    if (!std::isfinite(s.steering_gain)) throw InvalidParameter("steering gain must be finite");
    if (!s.world.inside(s.start.x, s.start.y)) throw InvalidParameter("start pose lies outside the envelope");
}

Scenario default_scenario() {
    Scenario s;
    const double y0 = 20.0;
    const double step = kDefaultStepLength;
    s.world.pipeline = {{103.0, y0},
                        {91.9, y0 + step},
                        {80.8, y0 + 2 * step},
                        {69.6, y0 + 3 * step},
                        {58.5, y0 + 4 * step},
                        {47.5, y0 + 5 * step}};
    s.world.pipe_width = 10.0;
    s.world.seed = 1;
    // On the lead-in waypoint, facing along the first pipe segment.
    s.start = {103.0, y0, 63.74};
    return s;
}

Scenario parse_scenario(std::string_view text, const std::string &source, const std::filesystem::path &base_dir) {
    Scenario s = default_scenario();
    int number = 0;

    using Setter = std::function<bool(std::string_view)>;
    auto real = [](double &field) -> Setter { return [&field](std::string_view v) { return parse_value(v, field); }; };
    auto integer = [](auto &field) -> Setter { return [&field](std::string_view v) { return parse_value(v, field); }; };

    const std::map<std::string, Setter, std::less<>> setters = {
        {"envelope.x", real(s.world.envelope_x)},
        {"envelope.y", real(s.world.envelope_y)},
        {"pipe.width", real(s.world.pipe_width)},
        {"pipe.waypoints",
         [&s](std::string_view v) {
             std::vector<Point2> pts;
             while (!trim(v).empty()) {
                 const auto semi = v.find(';');
                 const std::string_view item = trim(v.substr(0, semi));
                 const auto colon = item.find(':');
                 Point2 p;
                 if (colon == std::string_view::npos || !parse_value(item.substr(0, colon), p.x) ||
                     !parse_value(item.substr(colon + 1), p.y)) {
                     return false;
                 }
                 pts.push_back(p);
                 if (semi == std::string_view::npos) break;
                 v.remove_prefix(semi + 1);
             }
             s.world.pipeline = std::move(pts);
             return true;
         }},
        {"camera.height_cm", real(s.camera.height_cm)},
        {"camera.tilt_deg", real(s.camera.tilt_deg)},
        {"camera.fov_deg", real(s.camera.fov_deg)},
        {"camera.image_width", integer(s.camera.image_width)},
        {"camera.image_height", integer(s.camera.image_height)},
        {"camera.pipe_intensity", integer(s.camera.pipe_intensity)},
        {"camera.seabed_intensity", integer(s.camera.seabed_intensity)},
        {"camera.noise_amplitude", integer(s.camera.noise_amplitude)},
        {"camera.speckle_density", real(s.camera.speckle_density)},
        {"threshold.t1", integer(s.thresholds.t1)},
        {"threshold.t2", integer(s.thresholds.t2)},
        {"minArea", integer(s.min_area)},
        {"step.length", real(s.step_length)},
        {"steps.per.image", integer(s.steps_per_image)},
        {"steering.gain", real(s.steering_gain)},
        {"seed", integer(s.world.seed)},
        {"start.x", real(s.start.x)},
        {"start.y", real(s.start.y)},
        {"start.heading", real(s.start.heading)},
        {"rulebase",
         [&s, &base_dir](std::string_view v) {
             const std::filesystem::path p{std::string(trim(v))};
             if (p.empty()) return false;
             s.rulebase_path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
             return true;
         }},
    };

    while (true) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        ++number;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) throw ParseError(source, number, "expected 'key = value'");
            const std::string_view key = trim(line.substr(0, eq));
            const std::string_view value = trim(line.substr(eq + 1));
            const auto it = setters.find(key);
            if (it == setters.end()) throw ParseError(source, number, "unknown key '" + std::string(key) + "'");
            if (!it->second(value)) {
                throw ParseError(source, number, "malformed value for '" + std::string(key) + "'");
            }
        }
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }

    try {
        validate(s);
    } catch (const InvalidParameter &e) {
        throw ParseError(source, 0, e.what());
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, "cannot open scenario file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.string(), path.parent_path());
}

std::string print_scenario(const Scenario &s) {
    std::ostringstream out;
    out << "envelope.x = " << format(s.world.envelope_x) << '\n'
        << "envelope.y = " << format(s.world.envelope_y) << '\n'
        << "pipe.waypoints = ";
    for (std::size_t i = 0; i < s.world.pipeline.size(); ++i) {
        if (i > 0) out << ';';
        out << format(s.world.pipeline[i].x) << ':' << format(s.world.pipeline[i].y);
    }
    out << '\n'
        << "pipe.width = " << format(s.world.pipe_width) << '\n'
        << "camera.height_cm = " << format(s.camera.height_cm) << '\n'
        << "camera.tilt_deg = " << format(s.camera.tilt_deg) << '\n'
        << "camera.fov_deg = " << format(s.camera.fov_deg) << '\n'
        << "camera.image_width = " << s.camera.image_width << '\n'
        << "camera.image_height = " << s.camera.image_height << '\n'
        << "camera.pipe_intensity = " << s.camera.pipe_intensity << '\n'
        << "camera.seabed_intensity = " << s.camera.seabed_intensity << '\n'
        << "camera.noise_amplitude = " << s.camera.noise_amplitude << '\n'
        << "camera.speckle_density = " << format(s.camera.speckle_density) << '\n'
        << "threshold.t1 = " << s.thresholds.t1 << '\n'
        << "threshold.t2 = " << s.thresholds.t2 << '\n'
        << "minArea = " << s.min_area << '\n'
        << "step.length = " << format(s.step_length) << '\n'
        << "steps.per.image = " << s.steps_per_image << '\n'
        << "steering.gain = " << format(s.steering_gain) << '\n'
        << "seed = " << s.world.seed << '\n'
        << "start.x = " << format(s.start.x) << '\n'
        << "start.y = " << format(s.start.y) << '\n'
        << "start.heading = " << format(s.start.heading) << '\n';
    if (!s.rulebase_path.empty()) out << "rulebase = " << s.rulebase_path.string() << '\n';
    return out.str();
}

fis::RuleBase scenario_rulebase(const Scenario &scenario) {
    if (scenario.rulebase_path.empty()) return fis::default_rulebase();
    return fis::load_rulebase(scenario.rulebase_path.string());
}

}  // namespace pipetrack::sim
