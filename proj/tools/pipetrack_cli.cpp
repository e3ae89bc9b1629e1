// pipetrack: run pipeline-following missions, inspect features and rule
// firing, tune term parameters and plot recorded paths.
//
// Exit codes: 0 success (and, for `run`, every drift within tolerance),
// 1 mission failure or out-of-tolerance path, 2 usage or input errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pipetrack/error.hpp"
#include "pipetrack/features.hpp"
#include "pipetrack/fis.hpp"
#include "pipetrack/imgproc.hpp"
#include "pipetrack/mission.hpp"
#include "pipetrack/netpbm.hpp"
#include "pipetrack/plot.hpp"
#include "pipetrack/scenario.hpp"
#include "pipetrack/tune.hpp"

namespace {

using namespace pipetrack;

constexpr int kExitOk = 0;
constexpr int kExitMission = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string scenario;
    std::vector<std::string> scenarios;
    std::string rules;
    std::string out;
    std::string plot;
    std::string image;
    std::string csv;
    std::string mode = "sequential";
    std::optional<std::uint64_t> seed;
    double tolerance = sim::kDefaultTolerance;
    int budget = 500;
    std::vector<double> values;
};

void write_output(const std::string &path, const std::string &data) {
    if (path.empty() || path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << data)) throw Error(path + ": cannot write output");
}

sim::Scenario scenario_from(const Options &o) {
    sim::Scenario s = o.scenario.empty() ? sim::default_scenario() : sim::load_scenario(o.scenario);
    if (o.seed) s.world.seed = *o.seed;
    return s;
}

fis::RuleBase rules_from(const Options &o, const sim::Scenario *scenario) {
    if (!o.rules.empty()) return fis::load_rulebase(o.rules);
    if (scenario != nullptr) return sim::scenario_rulebase(*scenario);
    return fis::default_rulebase();
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

const char *status_name(sim::MissionStatus s) {
    switch (s) {
        case sim::MissionStatus::completed: return "completed";
        case sim::MissionStatus::no_object: return "no-object";
        case sim::MissionStatus::envelope_exit: return "envelope-exit";
        case sim::MissionStatus::step_limit: return "step-limit";
    }
    return "unknown";
}

int cmd_run(const Options &o) {
    const sim::Scenario scenario = scenario_from(o);
    const fis::RuleBase rb = rules_from(o, &scenario);
    const sim::Mode mode = o.mode == "overlapped" ? sim::Mode::overlapped : sim::Mode::sequential;
    const sim::MissionReport report = sim::run_mission(scenario, rb, mode, o.tolerance);

    write_output(o.out, sim::path_csv(report.record));
    if (!o.plot.empty()) {
        sim::PlotGeometry g{scenario.world.envelope_x, scenario.world.envelope_y, scenario.start.y,
                            scenario.step_length};
        write_output(o.plot, sim::render_svg(report.record, g));
    }
    if (!report.completed()) {
        std::cerr << "pipetrack: mission failed (" << status_name(report.status) << "): " << report.failure << '\n';
        return kExitMission;
    }
    if (!report.record.within_tolerance()) {
        std::cerr << "pipetrack: max drift " << fixed(report.record.max_abs_drift(), 1) << " cm exceeds tolerance "
                  << fixed(o.tolerance, 1) << " cm\n";
        return kExitMission;
    }
    return kExitOk;
}

std::string features_csv(const std::vector<FeatureVector> &vectors) {
    std::ostringstream out;
    out << "band,x1,x2,x3,x4,x5,x6\n";
    for (const FeatureVector &v : vectors) {
        out << v.band_index;
        for (double x : v.x) out << ',' << fixed(x, 4);
        out << '\n';
    }
    return out.str();
}

GrayImage load_image(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, 0, "cannot open image");
    char magic[2] = {};
    in.read(magic, 2);
    in.seekg(0);
    if (magic[0] == 'P' && magic[1] == '6') return rgb_to_gray(netpbm::read_ppm(in, path));
    return netpbm::read_pgm(in, path);
}

int cmd_features(const Options &o) {
    const sim::Scenario scenario = scenario_from(o);
    const GrayImage img = o.image.empty()
                              ? sim::render_view(scenario.world, scenario.start, scenario.camera, 0)
                              : load_image(o.image);
    try {
        write_output(o.out, features_csv(extract_features(img, scenario.thresholds, scenario.min_area)));
    } catch (const NoObject &e) {
        std::cerr << "pipetrack: " << e.what() << '\n';
        return kExitMission;
    }
    return kExitOk;
}

int cmd_infer(const Options &o) {
    const fis::RuleBase rb = rules_from(o, nullptr);
    if (o.values.size() != fis::kInputCount) {
        std::cerr << "pipetrack: infer expects 6 values x1..x6\n";
        return kExitUsage;
    }
    FeatureVector x;
    for (int i = 0; i < fis::kInputCount; ++i) {
        const auto &u = rb.input(i).universe();
        const double v = o.values[static_cast<std::size_t>(i)];
        if (!u.contains(v)) {
            std::cerr << "pipetrack: " << rb.input(i).name() << " = " << v << " lies outside its universe ["
                      << u.low << ", " << u.high << "]\n";
            return kExitUsage;
        }
        x.x[static_cast<std::size_t>(i)] = v;
    }
    const fis::InferenceResult result = fis::infer(rb, x);
    const std::string printed = fis::print_rulebase(rb);
    std::istringstream rule_lines(printed);
    std::ostringstream out;
    out << "rule,alpha,center,text\n";
    std::string line;
    for (std::size_t i = 0; i < rb.size() && std::getline(rule_lines, line); ++i) {
        out << i + 1 << ',' << fixed(result.firing_strengths[i], 6) << ',' << fixed(rb.consequent_center(i), 3)
            << ",\"" << line << "\"\n";
    }
    out << "y1 = " << fixed(result.output, 3) << (result.no_fire ? " (no rule fired)" : "") << '\n';
    write_output(o.out, out.str());
    return kExitOk;
}

int cmd_tune(const Options &o) {
    std::vector<sim::Scenario> suite;
    if (o.scenarios.empty()) {
        suite.push_back(sim::default_scenario());
    } else {
        for (const auto &path : o.scenarios) suite.push_back(sim::load_scenario(path));
    }
    if (o.seed) {
        for (auto &s : suite) s.world.seed = *o.seed;
    }
    const fis::RuleBase init = rules_from(o, &suite.front());
    const sim::TuneResult result = sim::tune(suite, init, o.budget, o.tolerance);
    std::cerr << "pipetrack: objective max|drift| " << fixed(result.before.max_abs_drift, 3) << " -> "
              << fixed(result.after.max_abs_drift, 3) << " cm (mean " << fixed(result.before.mean_abs_drift, 3)
              << " -> " << fixed(result.after.mean_abs_drift, 3) << ") after " << result.evaluations
              << " evaluations\n";
    write_output(o.out, fis::print_rulebase(result.tuned));
    return kExitOk;
}

int cmd_render(const Options &o) {
    const sim::Scenario scenario = scenario_from(o);
    const GrayImage img = sim::render_view(scenario.world, scenario.start, scenario.camera, 0);
    std::ostringstream buf;
    netpbm::write_pgm(buf, img);
    write_output(o.out, buf.str());
    return kExitOk;
}

int cmd_plot(const Options &o) {
    std::ifstream in(o.csv, std::ios::binary);
    if (!in) throw ParseError(o.csv, 0, "cannot open CSV");
    const sim::PathRecord record = sim::read_path_csv(in, o.csv, o.tolerance);
    sim::PlotGeometry g;
    if (!o.scenario.empty()) {
        const sim::Scenario s = sim::load_scenario(o.scenario);
        g = {s.world.envelope_x, s.world.envelope_y, s.start.y, s.step_length};
    }
    write_output(o.out, sim::render_svg(record, g));
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Vision-guided fuzzy pipeline following: missions, features, inference, tuning"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--rules", o.rules, "Rule file (default: scenario's rulebase or built-in)");
        cmd->add_option("--out", o.out, "Output path (default: stdout)");
    };

    auto *run = app.add_subcommand("run", "Run a mission and write the path record CSV");
    run->add_option("--scenario", o.scenario, "Scenario file")->required();
    add_common(run);
    run->add_option("--plot", o.plot, "Also write an SVG path plot");
    run->add_option("--mode", o.mode, "sequential or overlapped")
        ->check(CLI::IsMember({"sequential", "overlapped"}));
    run->add_option("--seed", o.seed, "Override the scenario seed");
    run->add_option("--tolerance", o.tolerance, "Drift tolerance in cm")->check(CLI::PositiveNumber);

    auto *features = app.add_subcommand("features", "Print the per-band feature vectors as CSV");
    features->add_option("--image", o.image, "PGM or PPM image (default: render the scenario start view)");
    features->add_option("--scenario", o.scenario, "Scenario file (thresholds, minArea, view)");
    features->add_option("--seed", o.seed, "Override the scenario seed");
    features->add_option("--out", o.out, "Output path (default: stdout)");

    auto *infer = app.add_subcommand("infer", "Evaluate the controller on one feature vector");
    add_common(infer);
    infer->add_option("values", o.values, "x1 x2 x3 x4 x5 x6")->expected(6);

    auto *tune = app.add_subcommand("tune", "Tune term parameters against scenarios");
    tune->add_option("--scenario", o.scenarios, "Scenario file (repeatable; default: built-in scenario)");
    add_common(tune);
    tune->add_option("--budget", o.budget, "Objective evaluations")->check(CLI::PositiveNumber);
    tune->add_option("--seed", o.seed, "Override every scenario seed");
    tune->add_option("--tolerance", o.tolerance, "Drift tolerance in cm")->check(CLI::PositiveNumber);

    auto *render = app.add_subcommand("render", "Render the scenario's start view as PGM");
    render->add_option("--scenario", o.scenario, "Scenario file");
    render->add_option("--seed", o.seed, "Override the scenario seed");
    render->add_option("--out", o.out, "Output path (default: stdout)");

    auto *plot = app.add_subcommand("plot", "Turn a path record CSV into an SVG plot");
    plot->add_option("--csv", o.csv, "Path record CSV")->required();
    plot->add_option("--scenario", o.scenario, "Scenario for envelope geometry");
    plot->add_option("--out", o.out, "Output path (default: stdout)");
    plot->add_option("--tolerance", o.tolerance, "Drift tolerance in cm")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run) return cmd_run(o);
        if (*features) return cmd_features(o);
        if (*infer) return cmd_infer(o);
        if (*tune) return cmd_tune(o);
        if (*render) return cmd_render(o);
        if (*plot) return cmd_plot(o);
    } catch (const ParseError &e) {
        std::cerr << "pipetrack: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidParameter &e) {
        std::cerr << "pipetrack: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error &e) {
        std::cerr << "pipetrack: " << e.what() << '\n';
        return kExitMission;
    }
    return kExitUsage;
}
