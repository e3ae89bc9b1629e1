#include "pipetrack/fis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pipetrack/error.hpp"

namespace pipetrack::fis {

LinguisticVariable::LinguisticVariable(std::string name, Interval universe, std::vector<Term> terms)
    : name_(std::move(name)), universe_(universe), terms_(std::move(terms)) {
    if (!(universe_.low < universe_.high)) throw InvalidParameter(name_ + ": empty universe");
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (terms_[i].name == terms_[j].name) {
                throw InvalidParameter(name_ + ": duplicate term " + terms_[i].name);
            }
        }
        set_membership(static_cast<int>(i), terms_[i].mf);
    }
}

int LinguisticVariable::term_index(std::string_view term_name) const noexcept {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].name == term_name) return static_cast<int>(i);
    }
    return -1;
}

void LinguisticVariable::set_membership(int index, const MembershipFunction &mf) {
    Term &t = terms_.at(static_cast<std::size_t>(index));
    validate(mf);
    if (!universe_.contains(mf.center)) {
        throw InvalidParameter(name_ + "." + t.name + ": centre " + std::to_string(mf.center) +
                               " lies outside the universe");
    }
    t.mf = mf;
}

RuleBase::RuleBase(std::array<LinguisticVariable, kInputCount> inputs, LinguisticVariable output,
                   std::vector<Rule> rules)
    : inputs_(std::move(inputs)), output_(std::move(output)), rules_(std::move(rules)) {
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        const Rule &rule = rules_[i];
        const std::string where = "rule " + std::to_string(i + 1);
        if (rule.antecedents.empty()) throw InvalidParameter(where + " has no antecedent");
        std::array<bool, kInputCount> seen{};
        for (const Antecedent &a : rule.antecedents) {
            if (a.variable < 0 || a.variable >= kInputCount) {
                throw InvalidParameter(where + " references an unknown variable");
            }
            if (seen[static_cast<std::size_t>(a.variable)]) {
                throw InvalidParameter(where + " constrains " + inputs_[a.variable].name() + " twice");
            }
            seen[static_cast<std::size_t>(a.variable)] = true;
            if (a.term < 0 || a.term >= static_cast<int>(inputs_[a.variable].terms().size())) {
                throw InvalidParameter(where + " references an unknown term");
            }
        }
        if (rule.consequent < 0 || rule.consequent >= static_cast<int>(output_.terms().size())) {
            throw InvalidParameter(where + " has an unknown consequent term");
        }
    }
}

const LinguisticVariable &RuleBase::variable(int slot) const {
    if (slot == kOutputSlot) return output_;
    return inputs_.at(static_cast<std::size_t>(slot));
}

void RuleBase::set_membership(int slot, int term, const MembershipFunction &mf) {
    if (slot == kOutputSlot) {
        output_.set_membership(term, mf);
    } else {
        inputs_.at(static_cast<std::size_t>(slot)).set_membership(term, mf);
    }
}

double RuleBase::consequent_center(std::size_t i) const {
    return output_.term(rules_.at(i).consequent).mf.center;
}

std::vector<double> fire_rules(const RuleBase &rb, const FeatureVector &x) {
    constexpr double slack = 1e-9;
    for (int v = 0; v < kInputCount; ++v) {
        const Interval &u = rb.input(v).universe();
        const double value = x.x[static_cast<std::size_t>(v)];
        if (!(value >= u.low - slack && value <= u.high + slack)) {
            throw InvalidParameter(rb.input(v).name() + " = " + std::to_string(value) +
                                   " lies outside its universe");
        }
    }
    std::vector<double> alpha;
    alpha.reserve(rb.size());
    for (const Rule &rule : rb.rules()) {
        double strength = 1.0;
        for (const Antecedent &a : rule.antecedents) {
            const double mu = rb.input(a.variable).term(a.term).mf(x.x[static_cast<std::size_t>(a.variable)]);
            strength = std::min(strength, mu);
        }
        alpha.push_back(strength);
    }
    return alpha;
}

Defuzzified defuzzify(const std::vector<double> &alpha, const RuleBase &rb) {
    if (alpha.size() != rb.size()) throw InvalidParameter("one firing strength per rule is required");
    double weighted = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        // Weights only need to be non-negative; the mean is scale free.
        if (!(alpha[i] >= 0.0 && std::isfinite(alpha[i]))) {
            throw InvalidParameter("firing strength must be finite and non-negative");
        }
        weighted += rb.consequent_center(i) * alpha[i];
        total += alpha[i];
    }
    if (total <= 0.0) return {kStraightAhead, true};
    return {weighted / total, false};
}

InferenceResult infer(const RuleBase &rb, const FeatureVector &x) {
    InferenceResult result;
    result.firing_strengths = fire_rules(rb, x);
    const Defuzzified d = defuzzify(result.firing_strengths, rb);
    result.output = d.output;
    result.no_fire = d.no_fire;
    return result;
}

std::array<LinguisticVariable, kInputCount> default_inputs() {
    constexpr double sigma = 0.19;
    auto gaussian = [](double c) { return MembershipFunction{MembershipKind::gaussian, sigma, c}; };
    const Interval unit{kUniverseLow, kUniverseHigh};
    auto area = [&](const char *name) {
        return LinguisticVariable(name, unit,
                                  {{"Small", gaussian(0.1)}, {"Medium", gaussian(0.55)}, {"Large", gaussian(1.0)}});
    };
    auto location = [&](const char *name) {
        return LinguisticVariable(name, unit,
                                  {{"Left", gaussian(0.1)}, {"Center", gaussian(0.55)}, {"Right", gaussian(1.0)}});
    };
    return {area("x1"), area("x2"), area("x3"), area("x4"), location("x5"), location("x6")};
}

LinguisticVariable default_output() {
    auto pi = [](double c) { return MembershipFunction{MembershipKind::pi, 60.0, c}; };
    return LinguisticVariable("y1", {0.0, 180.0},
                              {{"TurnLeft", pi(30.0)}, {"GoStraight", pi(90.0)}, {"TurnRight", pi(150.0)}});
}

RuleBase default_rulebase() { return parse_rulebase(default_rulebase_text(), "<default rules>"); }

namespace {

int mirrored_variable(int v) {
    switch (v) {
        case 0: return 1;
        case 1: return 0;
        case 2: return 3;
        case 3: return 2;
        default: return v;
    }
}

std::string_view mirrored_term_name(std::string_view name) {
    if (name == "Left") return "Right";
    if (name == "Right") return "Left";
    if (name == "TurnLeft") return "TurnRight";
    if (name == "TurnRight") return "TurnLeft";
    return name;
}

int mirrored_term(const LinguisticVariable &from, const LinguisticVariable &to, int term) {
    const std::string &name = from.term(term).name;
    const int index = to.term_index(mirrored_term_name(name));
    if (index < 0) throw InvalidParameter(to.name() + " has no mirror image for " + from.name() + "." + name);
    return index;
}

Rule canonical(Rule rule) {
    std::sort(rule.antecedents.begin(), rule.antecedents.end(),
              [](const Antecedent &a, const Antecedent &b) { return a.variable < b.variable; });
    return rule;
}

bool rule_less(const Rule &a, const Rule &b) {
    auto key = [](const Rule &r) {
        std::vector<int> k;
        for (const Antecedent &x : r.antecedents) {
            k.push_back(x.variable);
            k.push_back(x.term);
        }
        k.push_back(-1);
        k.push_back(r.consequent);
        return k;
    };
    return key(a) < key(b);
}

}  // namespace

RuleBase mirror(const RuleBase &rb) {
    std::vector<Rule> rules;
    rules.reserve(rb.size());
    for (const Rule &rule : rb.rules()) {
        Rule m;
        for (const Antecedent &a : rule.antecedents) {
            const int v = mirrored_variable(a.variable);
            m.antecedents.push_back({v, mirrored_term(rb.input(a.variable), rb.input(v), a.term)});
        }
        m.consequent = mirrored_term(rb.output(), rb.output(), rule.consequent);
        rules.push_back(std::move(m));
    }
    std::array<LinguisticVariable, kInputCount> inputs;
    for (int i = 0; i < kInputCount; ++i) inputs[static_cast<std::size_t>(i)] = rb.input(i);
    return RuleBase(std::move(inputs), rb.output(), std::move(rules));
}

bool is_mirror_symmetric(const RuleBase &rb) {
    auto sorted = [](const RuleBase &base) {
        std::vector<Rule> rules;
        for (const Rule &r : base.rules()) rules.push_back(canonical(r));
        std::sort(rules.begin(), rules.end(), rule_less);
        return rules;
    };
    return sorted(rb) == sorted(mirror(rb));
}

}  // namespace pipetrack::fis
