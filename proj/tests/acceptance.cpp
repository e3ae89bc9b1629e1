// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pipetrack/features.hpp"
#include "pipetrack/fis.hpp"
#include "pipetrack/imgproc.hpp"
#include "pipetrack/mission.hpp"
#include "pipetrack/scenario.hpp"
#include "pipetrack/tune.hpp"

using namespace pipetrack;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string format(const char *fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

Outcome drift_percentages() {
    const double drifts[] = {22.0, 13.2, 3.7, -2.5, -16.2, 7.7, -1.1, -1.1, 7.3, -6.0};
    const double expected[] = {275.0, 165.0, 46.3, 31.3, 202.5, 96.3, 13.8, 13.8, 91.3, 75.0};
    sim::World world;
    world.pipeline = {{75.0, 0.0}, {75.0, 200.0}};
    std::vector<sim::AuvState> path;
    for (int i = 0; i < 10; ++i) path.push_back({75.0 + drifts[i], 10.0 + 15.0 * i, 90.0});
    const sim::PathRecord r = sim::drift_metrics(path, world, 8.0);
    int exact = 0;
    std::string got;
    for (int i = 0; i < 10; ++i) {
        exact += r.points[static_cast<std::size_t>(i)].pct_drift == expected[i];
        got += format("%s%.1f", i ? " " : "", r.points[static_cast<std::size_t>(i)].pct_drift);
    }
    return {exact == 10, format("%d/10 exact: %s", exact, got.c_str())};
}

std::string drift_list(const sim::PathRecord &r) {
    std::string s;
    for (const auto &p : r.points) s += format("%s%+.1f", s.empty() ? "" : " ", p.drift);
    return s;
}

Outcome tuned_within_tolerance() {
    const sim::Scenario scenario = sim::default_scenario();
    const sim::MissionReport shipped = sim::run_mission(scenario, fis::default_rulebase());
    const sim::TuneResult tuned = sim::tune({scenario}, sim::detuned_rulebase(), 500);
    const sim::MissionReport retuned = sim::run_mission(scenario, tuned.tuned);
    auto ok = [](const sim::MissionReport &m) {
        return m.completed() && m.record.points.size() == 5 && m.record.within_tolerance();
    };
    return {ok(shipped) && ok(retuned),
            format("shipped [%s] max %.2f cm; retuned from detuned [%s] max %.2f cm",
                   drift_list(shipped.record).c_str(), shipped.record.max_abs_drift(),
                   drift_list(retuned.record).c_str(), retuned.record.max_abs_drift())};
}

Outcome detuned_out_of_tolerance() {
    const sim::MissionReport r = sim::run_mission(sim::default_scenario(), sim::detuned_rulebase());
    int outside = 0;
    for (const auto &p : r.record.points) outside += std::abs(p.drift) > 8.0;
    return {outside >= 1, format("%d of %zu points beyond 8.0 cm [%s]%s", outside, r.record.points.size(),
                                 drift_list(r.record).c_str(), r.completed() ? "" : ", mission then lost the pipe")};
}

Outcome oracle_equivalence() {
    std::vector<BinaryImage> corpus;
    std::vector<GrayImage> grays;
    std::mt19937 rng(2024);
    for (int i = 0; i < 200; ++i) grays.push_back(oracle::random_gray(rng, 16, 16));
    for (int mask = 0; mask < 512; ++mask) {
        GrayImage g(3, 3);
        for (int k = 0; k < 9; ++k) g.samples()[static_cast<std::size_t>(k)] = ((mask >> k) & 1) ? 255 : 0;
        grays.push_back(g);
    }
    int mismatches = 0;
    const ThresholdBand bands[] = {{100, 200}, {180, 255}, {0, 1}};
    for (const GrayImage &g : grays) {
        const std::vector<std::uint8_t> raw(g.samples().begin(), g.samples().end());
        for (const ThresholdBand &band : bands) {
            const BinaryImage b = threshold_band(g, band);
            const auto expected = oracle::threshold(raw, band.t1, band.t2);
            if (!std::equal(expected.begin(), expected.end(), b.samples().begin())) ++mismatches;
            if (area(b) != oracle::count(b)) ++mismatches;
            corpus.push_back(b);
        }
    }
    for (int i = 0; i < 200; ++i) corpus.push_back(oracle::random_binary(rng, 16, 16, 0.45));
    for (const BinaryImage &b : corpus) {
        const LabelMap lm = label_regions(b);
        const auto flood = oracle::flood_fill(b);
        if (lm.region_count() != flood.count ||
            !std::equal(flood.labels.begin(), flood.labels.end(), lm.labels().begin())) {
            ++mismatches;
        }
    }
    return {mismatches == 0, format("%d mismatches over %zu threshold/area and %zu labelling images", mismatches,
                                    grays.size() * 3, corpus.size())};
}

Outcome fis_numerics() {
    double worst_gauss = 0.0;
    for (double c : {0.1, 0.55, 1.0}) {
        worst_gauss = std::max(worst_gauss, std::abs(fis::eval_gaussian(c, 0.19, c) - 1.0));
        worst_gauss = std::max(worst_gauss, std::abs(fis::eval_gaussian(c + 0.19, 0.19, c) - std::exp(-0.5)));
        for (double d : {0.05, 0.19, 0.4}) {
            worst_gauss = std::max(worst_gauss,
                                   std::abs(fis::eval_gaussian(c + d, 0.19, c) - fis::eval_gaussian(c - d, 0.19, c)));
        }
    }

    double worst_jump = 0.0;
    const double eps = 1e-12;
    for (auto [b, c] : {std::pair{60.0, 30.0}, std::pair{60.0, 90.0}, std::pair{60.0, 150.0}}) {
        for (double p : {c - b, c - b / 2, c, c + b / 2, c + b}) {
            worst_jump = std::max(worst_jump, std::abs(fis::eval_pi(p - eps, b, c) - fis::eval_pi(p, b, c)));
            worst_jump = std::max(worst_jump, std::abs(fis::eval_pi(p + eps, b, c) - fis::eval_pi(p, b, c)));
        }
        const double a = c - b;
        for (double p : {a, c - b / 2, c}) {
            worst_jump = std::max(worst_jump, std::abs(fis::eval_s(p - eps, a, (a + c) / 2, c) -
                                                       fis::eval_s(p + eps, a, (a + c) / 2, c)));
        }
    }

    const fis::RuleBase rb = fis::default_rulebase();
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::uniform_real_distribution<double> w(0.0, 1.0);
    double worst_scale = 0.0;
    double worst_mirror = 0.0;
    for (int i = 0; i < 1000; ++i) {
        FeatureVector v;
        for (double &x : v.x) x = u(rng);
        const double y = fis::infer(rb, v).output;
        worst_mirror = std::max(worst_mirror, std::abs(fis::infer(rb, mirror(v)).output - (180.0 - y)));

        std::vector<double> alpha(rb.size());
        for (double &a : alpha) a = w(rng);
        const double base = fis::defuzzify(alpha, rb).output;
        for (double k : {0.1, 2.0, 10.0}) {
            std::vector<double> scaled = alpha;
            for (double &a : scaled) a *= k;
            worst_scale = std::max(worst_scale, std::abs(fis::defuzzify(scaled, rb).output - base));
        }
    }
    const bool pass = worst_gauss <= 1e-6 && worst_jump <= 1e-9 && worst_scale <= 1e-9 && worst_mirror <= 1e-9;
    return {pass, format("gaussian %.1e, branch jump %.1e, scaling %.1e, mirror %.1e (1000 vectors)", worst_gauss,
                         worst_jump, worst_scale, worst_mirror)};
}

Outcome determinism() {
    const fis::RuleBase rb = fis::default_rulebase();
    int runs = 0;
    int identical = 0;
    for (std::uint64_t seed : {1ULL, 42ULL, 9001ULL}) {
        sim::Scenario s = sim::default_scenario();
        s.world.seed = seed;
        const std::string a = sim::path_csv(sim::run_mission(s, rb, sim::Mode::sequential).record);
        const std::string b = sim::path_csv(sim::run_mission(s, rb, sim::Mode::sequential).record);
        const std::string c = sim::path_csv(sim::run_mission(s, rb, sim::Mode::overlapped).record);
        ++runs;
        identical += a == b && a == c && !a.empty();
    }
    return {identical == runs, format("%d/%d seeds byte-identical across 2 sequential + 1 overlapped run", identical,
                                      runs)};
}

Outcome dsl_round_trip() {
    const fis::RuleBase rb = fis::default_rulebase();
    const fis::RuleBase again = fis::parse_rulebase(fis::print_rulebase(rb));
    const bool pass = rb.size() == 13 && again.size() == 13 && again == rb;
    return {pass, format("default %zu rules, reparsed %zu rules, %s", rb.size(), again.size(),
                         again == rb ? "identical" : "different")};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
        {"AC1 percentage-of-drift rows", drift_percentages},
        {"AC2 tuned mission within 8.0 cm", tuned_within_tolerance},
        {"AC3 detuned mission exceeds 8.0 cm", detuned_out_of_tolerance},
        {"AC4 threshold/area/labelling oracles", oracle_equivalence},
        {"AC5 inference numerics", fis_numerics},
        {"AC6 determinism and overlap", determinism},
        {"AC7 rule language round trip", dsl_round_trip},
    };
    int failed = 0;
    for (const auto &[name, check] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.c_str());
        failed += !o.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
