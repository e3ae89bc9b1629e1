#include "pipetrack/plot.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace pipetrack::sim {

namespace {

constexpr double kScale = 3.0;  // pixels per cm
constexpr double kMargin = 30.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string render_svg(const PathRecord &record, const PlotGeometry &g) {
    const double width = g.envelope_x * kScale + 2 * kMargin;
    const double height = g.envelope_y * kScale + 2 * kMargin;
    auto px = [&](double x) { return num(kMargin + x * kScale); };
    auto py = [&](double y) { return num(kMargin + (g.envelope_y - y) * kScale); };
    auto station = [&](const PathPoint &p) { return g.origin_y + p.step * g.step_length; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n";
    out << "  <rect id=\"envelope\" x=\"" << px(0) << "\" y=\"" << py(g.envelope_y) << "\" width=\""
        << num(g.envelope_x * kScale) << "\" height=\"" << num(g.envelope_y * kScale)
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    if (!record.points.empty()) {
        out << "  <polygon id=\"tolerance\" fill=\"#cfe8ff\" stroke=\"none\" points=\"";
        for (const PathPoint &p : record.points) {
            out << px(p.actual_x - record.tolerance) << ',' << py(station(p)) << ' ';
        }
        for (auto it = record.points.rbegin(); it != record.points.rend(); ++it) {
            out << px(it->actual_x + record.tolerance) << ',' << py(station(*it)) << ' ';
        }
        out << "\"/>\n";

        out << "  <polyline id=\"pipeline\" fill=\"none\" stroke=\"#555555\" stroke-width=\"2\" points=\"";
        for (const PathPoint &p : record.points) out << px(p.actual_x) << ',' << py(station(p)) << ' ';
        out << "\"/>\n";

        out << "  <polyline id=\"path\" fill=\"none\" stroke=\"#d62728\" points=\"";
        for (const PathPoint &p : record.points) out << px(p.simulated_x) << ',' << py(station(p)) << ' ';
        out << "\"/>\n";

        for (const PathPoint &p : record.points) {
            const bool inside = std::abs(p.drift) <= record.tolerance;
            out << "  <circle class=\"marker\" cx=\"" << px(p.simulated_x) << "\" cy=\"" << py(station(p))
                << "\" r=\"4\" fill=\"" << (inside ? "#2ca02c" : "#d62728") << "\"/>\n";
            out << "  <text x=\"" << px(p.simulated_x + 3) << "\" y=\"" << py(station(p)) << "\" font-size=\"10\">"
                << p.step << "</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace pipetrack::sim
