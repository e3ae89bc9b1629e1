#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "pipetrack/features.hpp"
#include "pipetrack/membership.hpp"

namespace pipetrack::fis {

struct Interval {
    double low = 0.0;
    double high = 1.0;

    bool contains(double v) const noexcept { return v >= low && v <= high; }
    friend bool operator==(const Interval &, const Interval &) = default;
};

struct Term {
    std::string name;
    MembershipFunction mf;

    friend bool operator==(const Term &, const Term &) = default;
};

class LinguisticVariable {
public:
    LinguisticVariable() = default;
    LinguisticVariable(std::string name, Interval universe, std::vector<Term> terms);

    const std::string &name() const noexcept { return name_; }
    const Interval &universe() const noexcept { return universe_; }
    const std::vector<Term> &terms() const noexcept { return terms_; }
    const Term &term(int index) const { return terms_.at(static_cast<std::size_t>(index)); }

    /// -1 when absent.
    int term_index(std::string_view term_name) const noexcept;

    /// Replaces a term's shape; the centre must stay inside the universe.
    void set_membership(int index, const MembershipFunction &mf);

    friend bool operator==(const LinguisticVariable &, const LinguisticVariable &) = default;

private:
    std::string name_;
    Interval universe_;
    std::vector<Term> terms_;
};

inline constexpr int kInputCount = 6;
/// Variable slot of the output y1 in RuleBase::variable().
inline constexpr int kOutputSlot = kInputCount;

struct Antecedent {
    int variable = 0;  // 0..5 for x1..x6
    int term = 0;

    friend bool operator==(const Antecedent &, const Antecedent &) = default;
};

struct Rule {
    std::vector<Antecedent> antecedents;
    int consequent = 0;  // term index of y1

    friend bool operator==(const Rule &, const Rule &) = default;
};

/// Linguistic variables x1..x6, y1 and an ordered rule list. Immutable once
/// built apart from explicit membership edits, which re-validate.
class RuleBase {
public:
    RuleBase(std::array<LinguisticVariable, kInputCount> inputs, LinguisticVariable output,
             std::vector<Rule> rules);

    const LinguisticVariable &input(int i) const { return inputs_.at(static_cast<std::size_t>(i)); }
    const LinguisticVariable &output() const noexcept { return output_; }
    /// Slots 0..5 are the inputs, kOutputSlot the output.
    const LinguisticVariable &variable(int slot) const;
    const std::vector<Rule> &rules() const noexcept { return rules_; }
    std::size_t size() const noexcept { return rules_.size(); }

    void set_membership(int slot, int term, const MembershipFunction &mf);

    /// Centre of rule i's consequent term.
    double consequent_center(std::size_t i) const;

    friend bool operator==(const RuleBase &, const RuleBase &) = default;

private:
    std::array<LinguisticVariable, kInputCount> inputs_;
    LinguisticVariable output_;
    std::vector<Rule> rules_;
};

struct Defuzzified {
    double output = 90.0;
    bool no_fire = false;
};

struct InferenceResult {
    std::vector<double> firing_strengths;
    double output = 90.0;
    bool no_fire = false;
};

inline constexpr double kStraightAhead = 90.0;

/// Min-conjunction firing strength of every rule. Throws InvalidParameter
/// when an input lies outside its universe.
std::vector<double> fire_rules(const RuleBase &rb, const FeatureVector &x);

/// Weighted mean of consequent centres by firing strength. With no rule
/// firing the result is straight ahead (90) and flagged.
Defuzzified defuzzify(const std::vector<double> &alpha, const RuleBase &rb);

InferenceResult infer(const RuleBase &rb, const FeatureVector &x);

/// Default x1..x6 and y1 term sets.
std::array<LinguisticVariable, kInputCount> default_inputs();
LinguisticVariable default_output();

/// The shipped 13-rule controller.
RuleBase default_rulebase();

/// Text of the shipped controller in the rule language.
std::string_view default_rulebase_text();

/// Reads the rule language. Unknown names raise UnknownVariable /
/// UnknownTerm, a rule with no conditions EmptyAntecedent, anything else
/// ParseError; all carry the offending line.
RuleBase parse_rulebase(std::string_view text, const std::string &source = "");
RuleBase load_rulebase(const std::string &path);

/// Rules followed by every term definition; parse_rulebase inverts it exactly.
std::string print_rulebase(const RuleBase &rb);

/// Rule list mirrored left-right: x1<->x2, x3<->x4, Left<->Right and
/// TurnLeft<->TurnRight. Term shapes are untouched.
RuleBase mirror(const RuleBase &rb);

/// True when the rule list equals its mirror image as a set.
bool is_mirror_symmetric(const RuleBase &rb);

}  // namespace pipetrack::fis
