#include "pipetrack/tune.hpp"

#include <algorithm>
#include <cmath>

#include "pipetrack/error.hpp"

namespace pipetrack::sim {

bool better(const Objective &a, const Objective &b) {
    if (a.max_abs_drift != b.max_abs_drift) return a.max_abs_drift < b.max_abs_drift;
    return a.mean_abs_drift < b.mean_abs_drift;
}

Objective mission_objective(const std::vector<Scenario> &scenarios, const fis::RuleBase &rb, double tolerance) {
    Objective total;
    double mean_sum = 0.0;
    for (const Scenario &s : scenarios) {
        const MissionReport report = run_mission(s, rb, Mode::sequential, tolerance);
        // A failed mission still ranks by the drift it built up before failing,
        // which keeps the search landscape graded around failing settings.
        const double penalty = report.completed() ? 0.0 : kFailurePenalty;
        total.max_abs_drift = std::max(total.max_abs_drift, penalty + report.record.max_abs_drift());
        mean_sum += penalty + report.record.mean_abs_drift();
    }
    total.mean_abs_drift = scenarios.empty() ? 0.0 : mean_sum / static_cast<double>(scenarios.size());
    return total;
}

SearchResult coordinate_descent(const std::vector<Coordinate> &start,
                                const std::function<Objective(const std::vector<double> &)> &objective,
                                int budget) {
    if (budget < 1) throw InvalidParameter("tuning budget must be at least 1");
    SearchResult best;
    std::vector<double> steps;
    for (const Coordinate &c : start) {
        best.values.push_back(c.value);
        steps.push_back(c.step);
    }
    best.objective = objective(best.values);
    best.initial = best.objective;
    best.evaluations = 1;

    auto converged = [&] {
        for (std::size_t i = 0; i < start.size(); ++i) {
            if (steps[i] >= start[i].step / 64.0) return false;
        }
        return true;
    };

    while (best.evaluations < budget && !converged()) {
        bool improved = false;
        for (std::size_t i = 0; i < start.size() && best.evaluations < budget; ++i) {
            for (const double direction : {+1.0, -1.0}) {
                if (best.evaluations >= budget) break;
                const double candidate =
                    std::clamp(best.values[i] + direction * steps[i], start[i].lower, start[i].upper);
                if (candidate == best.values[i]) continue;
                std::vector<double> trial = best.values;
                trial[i] = candidate;
                const Objective score = objective(trial);
                ++best.evaluations;
                if (better(score, best.objective)) {
                    best.values = std::move(trial);
                    best.objective = score;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) {
            for (double &s : steps) s *= 0.5;
        }
    }
    return best;
}

namespace {

struct TermSlot {
    int slot;
    int term;
};

std::vector<TermSlot> term_slots(const fis::RuleBase &rb) {
    std::vector<TermSlot> out;
    for (int slot = 0; slot <= fis::kOutputSlot; ++slot) {
        const int n = static_cast<int>(rb.variable(slot).terms().size());
        for (int t = 0; t < n; ++t) out.push_back({slot, t});
    }
    return out;
}

// Two coordinates per term: centre then width.
std::vector<Coordinate> coordinates(const fis::RuleBase &rb, const std::vector<TermSlot> &slots) {
    std::vector<Coordinate> coords;
    for (const TermSlot &ts : slots) {
        const fis::LinguisticVariable &var = rb.variable(ts.slot);
        const fis::MembershipFunction &mf = var.term(ts.term).mf;
        const double span = var.universe().high - var.universe().low;
        coords.push_back({mf.center, span / 18.0, var.universe().low, var.universe().high});
        coords.push_back({mf.width, span / 45.0, span / 90.0, span});
    }
    return coords;
}

fis::RuleBase apply(fis::RuleBase rb, const std::vector<TermSlot> &slots, const std::vector<double> &values) {
    for (std::size_t i = 0; i < slots.size(); ++i) {
        fis::MembershipFunction mf = rb.variable(slots[i].slot).term(slots[i].term).mf;
        mf.center = values[2 * i];
        mf.width = values[2 * i + 1];
        rb.set_membership(slots[i].slot, slots[i].term, mf);
    }
    return rb;
}

}  // namespace

TuneResult tune(const std::vector<Scenario> &scenarios, const fis::RuleBase &init, int budget, double tolerance) {
    const auto slots = term_slots(init);
    const auto start = coordinates(init, slots);
    const SearchResult found = coordinate_descent(
        start,
        [&](const std::vector<double> &values) {
            return mission_objective(scenarios, apply(init, slots, values), tolerance);
        },
        budget);
    return {apply(init, slots, found.values), found.initial, found.objective, found.evaluations};
}

fis::RuleBase detuned_rulebase() {
    fis::RuleBase rb = fis::default_rulebase();
    for (int slot = 0; slot < fis::kInputCount; ++slot) {
        const fis::LinguisticVariable &var = rb.variable(slot);
        for (int t = 0; t < static_cast<int>(var.terms().size()); ++t) {
            fis::MembershipFunction mf = var.term(t).mf;
            mf.center = std::min(mf.center + 0.2, var.universe().high);
            rb.set_membership(slot, t, mf);
        }
    }
    return rb;
}

}  // namespace pipetrack::sim
